#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ideaforge/corpus.hpp"
#include "ideaforge/default_prompt.hpp"
#include "ideaforge/elo.hpp"
#include "ideaforge/errors.hpp"
#include "ideaforge/generate.hpp"
#include "ideaforge/idea.hpp"
#include "ideaforge/judge.hpp"
#include "ideaforge/select.hpp"

namespace py = pybind11;
using namespace ideaforge;

namespace {

std::map<std::string, std::string> verdict_outcomes_dict(const PairwiseVerdict& v) {
  std::map<std::string, std::string> out;
  for (const auto criterion : kAllCriteria) {
    const auto o = v.outcomes[criterion_index(criterion)];
    out[std::string(criterion_key(criterion))] =
        o == Outcome::FirstWins ? "a" : (o == Outcome::SecondWins ? "b" : "tie");
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Patent-to-product ideation pipeline: idea schema, Elo judging, "
            "prompt assembly";

  py::register_exception<Error>(m, "PipelineError");

  py::enum_<Domain>(m, "Domain")
      .value("NLP", Domain::NLP)
      .value("CS", Domain::CS)
      .value("MC", Domain::MC);

  py::class_<PatentRecord>(m, "PatentRecord")
      .def(py::init<>())
      .def_readwrite("id", &PatentRecord::id)
      .def_readwrite("title", &PatentRecord::title)
      .def_readwrite("abstract", &PatentRecord::abstract)
      .def_readwrite("claims", &PatentRecord::claims)
      .def_readwrite("description", &PatentRecord::description)
      .def_readwrite("domain", &PatentRecord::domain)
      .def("to_json", [](const PatentRecord& r) { return patent_to_json(r).dump(); })
      .def("__repr__", [](const PatentRecord& r) {
        return "<PatentRecord id='" + r.id + "'>";
      });

  m.def("parse_patent",
        [](const std::string& raw, Domain domain) { return parse_patent(raw, domain); },
        py::arg("raw_json"), py::arg("domain"),
        "Parse one patent JSON document; unrecognized fields are retained.");
  m.def("load_corpus",
        [](const std::filesystem::path& root, Domain domain) {
          std::vector<std::string> warnings;
          auto records = load_corpus(root, domain, &warnings);
          return py::make_tuple(std::move(records), std::move(warnings));
        },
        py::arg("root"), py::arg("domain"),
        "Load <root>/<domain>/*.json sorted by id. Returns (records, warnings).");

  py::enum_<CountMode>(m, "CountMode")
      .value("SCALARS", CountMode::Scalars)
      .value("BYTES", CountMode::Bytes);

  py::class_<FieldLimits>(m, "FieldLimits")
      .def(py::init<>())
      .def_readwrite("title_max", &FieldLimits::title_max)
      .def_readwrite("description_max", &FieldLimits::description_max)
      .def_readwrite("implementation_max", &FieldLimits::implementation_max)
      .def_readwrite("differentiation_max", &FieldLimits::differentiation_max)
      .def_readwrite("count_mode", &FieldLimits::count_mode);

  py::class_<ProductIdea>(m, "ProductIdea")
      .def(py::init<>())
      .def_readwrite("title", &ProductIdea::title)
      .def_readwrite("product_description", &ProductIdea::product_description)
      .def_readwrite("implementation", &ProductIdea::implementation)
      .def_readwrite("differentiation", &ProductIdea::differentiation)
      .def("__repr__", [](const ProductIdea& idea) {
        return "<ProductIdea title='" + idea.title + "'>";
      });

  py::class_<ViolationReport>(m, "ViolationReport")
      .def_readonly("title_excess", &ViolationReport::title_excess)
      .def_readonly("description_excess", &ViolationReport::description_excess)
      .def_readonly("implementation_excess", &ViolationReport::implementation_excess)
      .def_readonly("differentiation_excess", &ViolationReport::differentiation_excess)
      .def_property_readonly("total_excess", &ViolationReport::total_excess);

  m.def("char_len",
        [](const std::string& s, CountMode mode) { return char_len(s, mode); },
        py::arg("s"), py::arg("mode") = CountMode::Scalars,
        "Unicode scalar count (or byte count under CountMode.BYTES).");
  m.def("parse_idea", &parse_idea, py::arg("raw"),
        "Extract and validate the four-field idea object from model output.");
  m.def("truncate_idea", &truncate_idea, py::arg("idea"), py::arg("limits"),
        "Clamp fields to their limits; returns (idea, violation_report).");
  m.def("serialize_idea", &serialize_idea, py::arg("idea"));
  m.def("within_limits", &within_limits, py::arg("idea"), py::arg("limits"));

  py::class_<PromptCandidate>(m, "PromptCandidate")
      .def(py::init<>())
      .def_readwrite("id", &PromptCandidate::id)
      .def_readwrite("parent_ids", &PromptCandidate::parent_ids)
      .def_readwrite("system_prompt", &PromptCandidate::system_prompt)
      .def_readwrite("user_template", &PromptCandidate::user_template)
      .def_readwrite("domain", &PromptCandidate::domain)
      .def_readwrite("notes", &PromptCandidate::notes);

  m.def("default_candidate", &default_candidate,
        py::return_value_policy::reference, "The bundled default candidate.");
  m.def("validate_template",
        [](const std::string& t) { validate_template(t); }, py::arg("user_template"));
  m.def("limits_restatement", &limits_restatement, py::arg("limits"));
  m.def("assemble_user_prompt", &assemble_user_prompt, py::arg("candidate"),
        py::arg("patent"), py::arg("limits"));

  py::enum_<Criterion>(m, "Criterion")
      .value("TECHNICAL_VALIDITY", Criterion::TechnicalValidity)
      .value("INNOVATIVENESS", Criterion::Innovativeness)
      .value("SPECIFICITY", Criterion::Specificity)
      .value("NEED_VALIDITY", Criterion::NeedValidity)
      .value("MARKET_SIZE", Criterion::MarketSize)
      .value("COMPETITIVE_ADVANTAGE", Criterion::CompetitiveAdvantage);

  m.def("criterion_key", [](Criterion c) { return std::string(criterion_key(c)); });
  m.def("build_judge_prompt",
        [](const PatentRecord& patent, const ProductIdea& first,
           const ProductIdea& second) { return build_judge_prompt(patent, first, second); },
        py::arg("patent"), py::arg("first"), py::arg("second"));
  m.def("parse_verdict",
        [](const std::string& raw, bool swapped) {
          const VerdictMap outcomes = parse_verdict(raw, swapped);
          std::map<std::string, std::string> out;
          for (const auto criterion : kAllCriteria) {
            const auto o = outcomes[criterion_index(criterion)];
            out[std::string(criterion_key(criterion))] =
                o == Outcome::FirstWins ? "a" : (o == Outcome::SecondWins ? "b" : "tie");
          }
          return out;
        },
        py::arg("raw"), py::arg("swapped"),
        "Parse a judge reply; outcomes are de-swapped to the logical pair.");

  py::class_<PairwiseVerdict>(m, "PairwiseVerdict")
      .def(py::init([](const std::string& patent_id, const std::string& first_shown,
                       const std::string& second_shown, bool swapped,
                       const std::map<std::string, std::string>& outcomes) {
             PairwiseVerdict v;
             v.patent_id = patent_id;
             v.first_shown = first_shown;
             v.second_shown = second_shown;
             v.swapped = swapped;
             for (const auto criterion : kAllCriteria) {
               const auto& value = outcomes.at(std::string(criterion_key(criterion)));
               v.outcomes[criterion_index(criterion)] =
                   value == "a" ? Outcome::FirstWins
                                : (value == "b" ? Outcome::SecondWins : Outcome::Tie);
             }
             return v;
           }),
           py::arg("patent_id"), py::arg("first_shown"), py::arg("second_shown"),
           py::arg("swapped"), py::arg("outcomes"))
      .def_readonly("patent_id", &PairwiseVerdict::patent_id)
      .def_readonly("first_shown", &PairwiseVerdict::first_shown)
      .def_readonly("second_shown", &PairwiseVerdict::second_shown)
      .def_readonly("swapped", &PairwiseVerdict::swapped)
      .def_property_readonly("outcomes", &verdict_outcomes_dict)
      .def_property_readonly("logical_a",
                             [](const PairwiseVerdict& v) { return v.logical_a(); })
      .def_property_readonly("logical_b",
                             [](const PairwiseVerdict& v) { return v.logical_b(); });

  m.def("expected_score", &expected_score, py::arg("r_a"), py::arg("r_b"),
        "Elo logistic expectation 1 / (1 + 10^((r_b - r_a)/400)).");

  py::class_<RatingTable>(m, "RatingTable")
      .def(py::init<double, double>(), py::arg("initial_rating") = 1000.0,
           py::arg("k_factor") = 32.0)
      .def("register_prompt", &RatingTable::register_prompt)
      .def("contains", &RatingTable::contains)
      .def("rating", &RatingTable::rating)
      .def("match_count", &RatingTable::match_count)
      .def("apply_match", &RatingTable::apply_match)
      .def("set_rating", &RatingTable::set_rating)
      .def("prompt_ids", &RatingTable::prompt_ids)
      .def_property_readonly("initial_rating", &RatingTable::initial_rating)
      .def_property_readonly("k_factor", &RatingTable::k_factor)
      .def("to_json", [](const RatingTable& t) { return t.to_json().dump(2); });

  py::class_<ScheduledMatch>(m, "ScheduledMatch")
      .def_readonly("patent_id", &ScheduledMatch::patent_id)
      .def_readonly("a_id", &ScheduledMatch::a_id)
      .def_readonly("b_id", &ScheduledMatch::b_id);

  m.def("schedule_round_robin", &schedule_round_robin, py::arg("prompt_ids"),
        py::arg("corpus"),
        "Every unordered prompt pair once per patent, in canonical order.");

  m.def("rank", [](const RatingTable& table) {
    py::list rows;
    for (const auto& row : rank(table)) {
      py::dict entry;
      entry["prompt_id"] = row.prompt_id;
      entry["mean_rating"] = row.mean_rating;
      for (const auto criterion : kAllCriteria) {
        entry[py::str(std::string(criterion_key(criterion)))] =
            row.ratings[criterion_index(criterion)];
      }
      rows.append(std::move(entry));
    }
    return rows;
  });
  m.def("format_leaderboard",
        [](const RatingTable& table) { return format_leaderboard(rank(table)); });

#ifdef IDEAFORGE_VERSION
  m.attr("__version__") = IDEAFORGE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
