// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "mfk/hier_kriging.hpp"
#include "mfk/kriging.hpp"

namespace mfk {

/// JSON text for a fitted Kriging model: dimension, domain bounds, fidelity,
/// theta, trend and variance estimates, nugget, response mean, and the
/// normalized training data. Enough to rebuild predictions exactly; the
/// Cholesky factor is recomputed on load with the stored nugget.
std::string to_json(const KrigingModel& model);

/// JSON text for a hierarchical model: an embedded low-fidelity model plus
/// the high-fidelity layer fields.
std::string to_json(const HkModel& model);

/// Parse the output of to_json(const KrigingModel&).
/// Throws DataFormatError on malformed or incomplete input.
KrigingModel kriging_from_json(const std::string& text);

/// Parse the output of to_json(const HkModel&).
HkModel hk_from_json(const std::string& text);

/// Convenience file wrappers.
void save_model(const KrigingModel& model, const std::string& path);
void save_model(const HkModel& model, const std::string& path);
KrigingModel load_kriging(const std::string& path);
HkModel load_hk(const std::string& path);

/// True if the JSON at `text` carries a hierarchical model envelope.
bool is_hk_json(const std::string& text);

}  // namespace mfk
