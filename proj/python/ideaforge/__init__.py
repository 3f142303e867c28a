"""Patent-to-product ideation pipeline.

The heavy lifting lives in the compiled extension ``ideaforge._core``:
idea parsing and truncation, patent corpus loading, prompt assembly,
pairwise judge prompts/verdicts, and the per-criterion Elo machinery.
"""

import importlib

__all__ = [
    "CountMode",
    "Criterion",
    "Domain",
    "FieldLimits",
    "PairwiseVerdict",
    "PatentRecord",
    "PipelineError",
    "ProductIdea",
    "PromptCandidate",
    "RatingTable",
    "ScheduledMatch",
    "ViolationReport",
    "__version__",
    "assemble_user_prompt",
    "build_judge_prompt",
    "char_len",
    "criterion_key",
    "default_candidate",
    "expected_score",
    "format_leaderboard",
    "limits_restatement",
    "load_corpus",
    "parse_idea",
    "parse_patent",
    "parse_verdict",
    "rank",
    "schedule_round_robin",
    "serialize_idea",
    "truncate_idea",
    "validate_template",
    "within_limits",
]

try:
    _core = importlib.import_module("._core", __name__)
except ImportError:  # source checkout: the extension is on sys.path instead
    _core = importlib.import_module("_core")

for _name in __all__:
    globals()[_name] = getattr(_core, _name)
del _name
