// SPDX-License-Identifier: Apache-2.0
#include "freemoe/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

namespace freemoe {
namespace {

Json key_to_json(const WordTuple& key) {
  Json arr = Json::array();
  for (const Word& w : key.components()) {
    arr.push_back(format(w));
  }
  return arr;
}

WordTuple key_from_json(const Json& j, std::size_t arity) {
  if (!j.is_array() || j.size() != arity) {
    throw std::invalid_argument("term key must be an array of " + std::to_string(arity) +
                                " words");
  }
  std::vector<Word> parts;
  for (const Json& w : j) {
    if (!w.is_string()) {
      throw std::invalid_argument("term key entries must be word strings");
    }
    parts.push_back(parse_word(w.get<std::string>()));
  }
  return WordTuple(std::move(parts));
}

std::size_t arity_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("arity") || !j.contains("terms") ||
      !j.at("arity").is_number_unsigned() || !j.at("terms").is_array()) {
    throw std::invalid_argument("algebra element JSON needs unsigned 'arity' and array 'terms'");
  }
  const auto arity = j.at("arity").get<std::size_t>();
  if (arity == 0) {
    throw std::invalid_argument("arity must be at least 1");
  }
  return arity;
}

mpq_class rational_from_json(const Json& j) {
  if (j.is_string()) {
    return parse_rational(j.get<std::string>());
  }
  if (j.is_number_integer()) {
    return mpq_class(j.get<long>());
  }
  throw std::invalid_argument("exact coefficient must be a \"p/q\" string or an integer");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json to_json(const FloatElement& f) {
  Json terms = Json::array();
  for (const auto& [key, c] : f.sorted_terms()) {
    terms.push_back({{"key", key_to_json(key)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"arity", f.arity()}, {"terms", std::move(terms)}};
}

Json to_json(const ExactElement& f) {
  Json terms = Json::array();
  for (const auto& [key, c] : f.sorted_terms()) {
    terms.push_back(
        {{"key", key_to_json(key)}, {"re", to_string(c.real())}, {"im", to_string(c.imag())}});
  }
  return {{"arity", f.arity()}, {"terms", std::move(terms)}};
}

FloatElement float_element_from_json(const Json& j) {
  const std::size_t arity = arity_from_json(j);
  FloatElement f(arity);
  for (const Json& t : j.at("terms")) {
    if (!t.contains("key") || !t.contains("re")) {
      throw std::invalid_argument("term needs 'key' and 're'");
    }
    const double re = t.at("re").get<double>();
    const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
    f.add_term(key_from_json(t.at("key"), arity), Complex{re, im});
  }
  return f;
}

ExactElement exact_element_from_json(const Json& j) {
  const std::size_t arity = arity_from_json(j);
  ExactElement f(arity);
  for (const Json& t : j.at("terms")) {
    if (!t.contains("key") || !t.contains("re")) {
      throw std::invalid_argument("term needs 'key' and 're'");
    }
    mpq_class re = rational_from_json(t.at("re"));
    mpq_class im = t.contains("im") ? rational_from_json(t.at("im")) : mpq_class(0);
    f.add_term(key_from_json(t.at("key"), arity), ComplexRational(re, im));
  }
  return f;
}

Json to_json(const MomentBound& b) {
  Json schedule = Json::array();
  for (const auto& p : b.schedule) {
    schedule.push_back({{"power", p.power}, {"value", p.value}});
  }
  Json out{{"lower", b.lower}, {"schedule", std::move(schedule)}, {"truncated", b.truncated}};
  out["truncated_at"] = b.truncated_at ? Json(*b.truncated_at) : Json(nullptr);
  return out;
}

Json to_json(const NormEstimate& e) {
  Json schedule = Json::array();
  for (const auto& p : e.moment_schedule) {
    schedule.push_back({{"power", p.power}, {"value", p.value}});
  }
  Json out{{"lower", e.lower},
           {"upper", e.upper},
           {"moment_schedule", std::move(schedule)},
           {"lower_method", e.lower_method},
           {"upper_method", e.upper_method},
           {"truncated", e.truncated}};
  out["truncated_at"] = e.truncated_at ? Json(*e.truncated_at) : Json(nullptr);
  return out;
}

Json spectrum_to_json(std::vector<double> spectrum) {
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  return Json(spectrum);
}

Json to_json(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dimension", rho.dimension()},
          {"re", std::move(re)},
          {"im", std::move(im)},
          {"spectrum", spectrum_to_json(rho.eigenvalues())}};
}

Json to_json(const PureState& xi) {
  std::vector<std::pair<WordTuple, Complex>> terms(xi.amplitudes().begin(),
                                                   xi.amplitudes().end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json arr = Json::array();
  for (const auto& [key, c] : terms) {
    arr.push_back({{"key", key_to_json(key)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"arity", xi.arity()}, {"terms", std::move(arr)}};
}

Json to_json(const ViolationCertificate& c) {
  return {{"N", c.N},
          {"lhs_upper", c.lhs_upper},
          {"rhs_lower", c.rhs_lower},
          {"rhs_lower_loose", c.rhs_lower_loose},
          {"gap", c.gap},
          {"gap_loose", c.gap_loose},
          {"violated", c.violated},
          {"violated_loose", c.violated_loose}};
}

Json to_json(const BoundReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"state", s.state},
                       {"hs_distance", s.hs_distance},
                       {"entropy", s.entropy},
                       {"hs_pass", s.hs_distance <= r.hs_bound + 1e-9},
                       {"entropy_pass", s.entropy >= r.hmin_lower - 1e-9}});
  }
  return {{"N", r.N},
          {"k", r.k},
          {"seed", r.seed},
          {"sample_count", r.samples.size()},
          {"hs_bound", r.hs_bound},
          {"hmin_lower", r.hmin_lower},
          {"reg_lower", r.reg_lower},
          {"hs_pass", r.hs_pass()},
          {"entropy_pass", r.entropy_pass()},
          {"samples", std::move(samples)}};
}

std::string to_csv(const BoundReport& r) {
  std::ostringstream out;
  out << "N,k,seed,state,hs_distance,hs_bound,hs_pass,entropy,hmin_lower,entropy_pass\n";
  for (const auto& s : r.samples) {
    std::string state = s.state;
    std::replace(state.begin(), state.end(), '"', '\'');
    out << r.N << ',' << r.k << ',' << r.seed << ",\"" << state << "\","
        << format_double(s.hs_distance) << ',' << format_double(r.hs_bound) << ','
        << (s.hs_distance <= r.hs_bound + 1e-9 ? "true" : "false") << ','
        << format_double(s.entropy) << ',' << format_double(r.hmin_lower) << ','
        << (s.entropy >= r.hmin_lower - 1e-9 ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace freemoe
