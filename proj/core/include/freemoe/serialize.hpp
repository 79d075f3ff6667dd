// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "freemoe/algebra.hpp"
#include "freemoe/channels.hpp"
#include "freemoe/entropy.hpp"
#include "freemoe/specnorm.hpp"

namespace freemoe {

using Json = nlohmann::json;

/// {"arity": r, "terms": [{"key": ["g1*g2", "e"], "re": x, "im": y}, ...]},
/// terms sorted by key. Exact coefficients are written as "p/q" strings.
Json to_json(const FloatElement& f);
Json to_json(const ExactElement& f);

/// Inverses of to_json. Throws std::invalid_argument (or ParseError for
/// malformed words) on schema violations.
FloatElement float_element_from_json(const Json& j);
ExactElement exact_element_from_json(const Json& j);

Json to_json(const MomentBound& b);
Json to_json(const NormEstimate& e);

/// {"dimension": d, "re": [[...]], "im": [[...]], "spectrum": [...]}.
Json to_json(const DensityMatrix& rho);

/// Sorted descending.
Json spectrum_to_json(std::vector<double> spectrum);

Json to_json(const PureState& xi);
Json to_json(const ViolationCertificate& c);
Json to_json(const BoundReport& r);

/// Header line plus one row per sample:
/// N,k,seed,state,hs_distance,hs_bound,hs_pass,entropy,hmin_lower,entropy_pass
std::string to_csv(const BoundReport& r);

/// Shortest round-trip text for a double.
std::string format_double(double v);

}  // namespace freemoe
