#include "ideaforge/select.hpp"

#include <algorithm>

#include "ideaforge/errors.hpp"

namespace ideaforge {

nlohmann::ordered_json SelectionReport::to_json() const {
  nlohmann::ordered_json j;
  j["lambda"] = lambda;
  j["chosen"] = chosen;
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"prompt_id", row.prompt_id},
                         {"mean_rating", row.mean_rating},
                         {"total_excess", row.total_excess},
                         {"composite", row.composite}});
  }
  j["candidates"] = std::move(rows_json);
  return j;
}

SelectionReport select_final(const RatingTable& table, const RecordIndex& records,
                             double lambda) {
  if (lambda < 0.0) throw Error(ErrorCode::Precondition, "lambda must be >= 0");

  SelectionReport report;
  report.lambda = lambda;
  for (const auto& ranked : rank(table)) {
    const auto* per_patent = records.for_prompt(ranked.prompt_id);
    if (per_patent == nullptr || per_patent->empty()) {
      throw Error(ErrorCode::MissingRecords, ranked.prompt_id);
    }
    SelectionRow row;
    row.prompt_id = ranked.prompt_id;
    row.mean_rating = ranked.mean_rating;
    for (const auto& [_, record] : *per_patent) {
      row.total_excess += record.violation.total_excess();
    }
    row.composite = row.mean_rating - lambda * static_cast<double>(row.total_excess);
    report.rows.push_back(std::move(row));
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const SelectionRow& a, const SelectionRow& b) {
              if (a.composite != b.composite) return a.composite > b.composite;
              if (a.mean_rating != b.mean_rating) return a.mean_rating > b.mean_rating;
              return a.prompt_id < b.prompt_id;
            });
  report.chosen = report.rows.front().prompt_id;
  return report;
}

std::string export_submission(const RecordIndex& records, const std::string& prompt_id,
                              const std::vector<PatentRecord>& corpus) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& patent : corpus) {
    if (!records.has(prompt_id, patent.id)) {
      throw Error(ErrorCode::IncompleteRecords,
                  prompt_id + " has no record for patent " + patent.id);
    }
    const auto& record = records.get(prompt_id, patent.id);
    out[patent.id] = nlohmann::ordered_json::parse(serialize_idea(record.idea));
  }
  return out.dump(2) + "\n";
}

}  // namespace ideaforge
