#pragma once

#include "ideaforge/generate.hpp"

namespace ideaforge {

/// The bundled default prompt candidate (id "default-nlp"). Also shipped as
/// assets/prompts/default_nlp.json.
const PromptCandidate& default_candidate();

}  // namespace ideaforge
