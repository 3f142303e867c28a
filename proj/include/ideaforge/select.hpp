#pragma once

#include <string>
#include <vector>

#include "ideaforge/corpus.hpp"
#include "ideaforge/elo.hpp"
#include "ideaforge/generate.hpp"

namespace ideaforge {

struct SelectionRow {
  std::string prompt_id;
  double mean_rating = 0.0;
  long total_excess = 0;    // pre-truncation excess characters over all records
  double composite = 0.0;   // mean_rating - lambda * total_excess
};

struct SelectionReport {
  double lambda = 0.0;
  std::vector<SelectionRow> rows;  // composite descending
  std::string chosen;

  nlohmann::ordered_json to_json() const;
};

/// Picks the candidate balancing rank against length-violation degree:
/// composite = mean_rating - lambda * total_excess, ties broken by higher
/// mean rating, then id ascending. Every rated candidate must have records.
SelectionReport select_final(const RatingTable& table, const RecordIndex& records,
                             double lambda);

/// The per-patent idea objects for one prompt, keyed by patent id in
/// canonical order. Deterministic serialization: re-export is byte-identical.
/// Throws IncompleteRecords naming the first missing patent.
std::string export_submission(const RecordIndex& records, const std::string& prompt_id,
                              const std::vector<PatentRecord>& corpus);

}  // namespace ideaforge
