// SPDX-License-Identifier: Apache-2.0
#include "freemoe/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "freemoe/entropy.hpp"
#include "freemoe/sampling.hpp"
#include "freemoe/specnorm.hpp"

namespace freemoe::cli {
namespace {

constexpr double kMaxIntegerN = 1 << 20;

struct Suite {
  std::size_t passes = 0;
  Json failures = Json::array();
  Json samples = Json::array();
  Json summary = Json::object();
  std::string headline;
  std::vector<std::string> csv_columns;
  std::string csv_override;

  void record(bool pass, Json sample, const std::function<Json()>& failure_input, double observed,
              double bound) {
    sample["pass"] = pass;
    samples.push_back(std::move(sample));
    if (pass) {
      ++passes;
    } else {
      failures.push_back({{"input", failure_input()}, {"observed", observed}, {"bound", bound}});
    }
  }
};

unsigned integer_n(const RunConfig& c) {
  return static_cast<unsigned>(c.N);
}

double units(const RunConfig& c, double nats) {
  return c.log_base == LogBase::two ? nats / std::numbers::ln2 : nats;
}

std::string unit_name(const RunConfig& c) { return c.log_base == LogBase::two ? "bits" : "nats"; }

Rng sample_rng(const RunConfig& c, std::size_t i) { return Rng(derive_seed(c.seed, i)); }

std::string num(double v) { return format_double(v); }

Json grade_json(const std::vector<std::size_t>& g) { return Json(g); }

std::size_t power_of(unsigned n, unsigned k) {
  std::size_t d = 1;
  for (unsigned j = 0; j < k; ++j) {
    d *= n;
  }
  return d;
}

void require_output_dimension(const RunConfig& c, std::size_t cap) {
  const double dim = std::pow(c.N, c.k);
  if (dim > static_cast<double>(cap)) {
    throw ResourceLimitError("output dimension N^k = " + num(dim) + " exceeds cap " +
                             std::to_string(cap) + "; choose smaller N or k");
  }
}

bool lemma_conditions(const std::vector<std::size_t>& k, const std::vector<std::size_t>& l,
                      const std::vector<std::size_t>& m) {
  for (std::size_t j = 0; j < k.size(); ++j) {
    const std::size_t lo = k[j] > l[j] ? k[j] - l[j] : l[j] - k[j];
    if (m[j] < lo || m[j] > k[j] + l[j] || (k[j] + l[j] - m[j]) % 2 != 0) {
      return false;
    }
  }
  return true;
}

template <class S>
void lemma_suite(const RunConfig& c, Suite& s) {
  const unsigned n = integer_n(c);
  const unsigned r = c.support_radius();
  std::size_t zero_cases = 0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < c.sample_count(); ++i) {
    Rng rng = sample_rng(c, i);
    std::uniform_int_distribution<std::size_t> entry(0, r);
    std::vector<std::size_t> kk(c.k), ll(c.k), mm(c.k);
    const bool aim_valid = rng() % 2 == 0;
    for (unsigned j = 0; j < c.k; ++j) {
      kk[j] = entry(rng);
      ll[j] = entry(rng);
      if (aim_valid) {
        const std::size_t lo = kk[j] > ll[j] ? kk[j] - ll[j] : ll[j] - kk[j];
        const std::size_t steps = (kk[j] + ll[j] - lo) / 2;
        mm[j] = lo + 2 * std::uniform_int_distribution<std::size_t>(0, steps)(rng);
      } else {
        mm[j] = std::uniform_int_distribution<std::size_t>(0, 2 * r)(rng);
      }
    }
    const AlgebraElement<S> f = random_graded_element<S>(rng, kk, 6, n);
    const AlgebraElement<S> g = random_graded_element<S>(rng, ll, 6, n);
    const AlgebraElement<S> piece = restrict(convolve(f, g), mm);
    const bool allowed = lemma_conditions(kk, ll, mm);
    const double observed = l2_norm(piece);
    const double bound = allowed ? l2_norm(f) * l2_norm(g) : 0.0;
    const bool pass = allowed ? observed <= bound + 1e-12 : piece.empty();
    if (!allowed) {
      ++zero_cases;
    } else if (bound > 0.0) {
      worst_ratio = std::max(worst_ratio, observed / bound);
    }
    s.record(pass,
             {{"index", i},
              {"k", grade_json(kk)},
              {"l", grade_json(ll)},
              {"m", grade_json(mm)},
              {"support_condition", allowed},
              {"observed", observed},
              {"bound", bound}},
             [&] {
               return Json{{"sample", i}, {"f", to_json(f)}, {"g", to_json(g)}, {"m", mm}};
             },
             observed, bound);
  }
  s.summary = {{"instances", c.sample_count()},
               {"forced_zero_instances", zero_cases},
               {"max_norm_ratio", worst_ratio}};
  s.headline = "graded product: " + std::to_string(zero_cases) +
               " instances outside the support/parity window (all must vanish), max |(f*g)_m|/(|f||g|) = " +
               num(worst_ratio);
  s.csv_columns = {"index", "k", "l", "m", "support_condition", "observed", "bound", "pass"};
}

MomentOptions moment_options(const RunConfig& c) {
  MomentOptions o;
  o.support_budget = c.moment_budget;
  return o;
}

template <class S>
void haagerup_suite(const RunConfig& c, Suite& s) {
  const unsigned n = integer_n(c);
  const unsigned r = c.support_radius();
  std::size_t truncated = 0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < c.sample_count(); ++i) {
    Rng rng = sample_rng(c, i);
    std::uniform_int_distribution<std::size_t> len(0, r);
    std::vector<std::size_t> grade(c.k);
    for (auto& g : grade) {
      g = len(rng);
    }
    const AlgebraElement<S> f = random_graded_element<S>(rng, grade, 12, n);
    const NormEstimate est = estimate_norm(f, moment_options(c));
    truncated += est.truncated ? 1 : 0;
    if (est.upper > 0.0) {
      worst_ratio = std::max(worst_ratio, est.lower / est.upper);
    }
    s.record(est.lower <= est.upper + 1e-9,
             {{"index", i},
              {"grade", grade_json(grade)},
              {"support", f.size()},
              {"lower", est.lower},
              {"upper", est.upper},
              {"truncated", est.truncated}},
             [&] { return Json{{"sample", i}, {"f", to_json(f)}, {"estimate", to_json(est)}}; },
             est.lower, est.upper);
  }
  s.summary = {{"instances", c.sample_count()},
               {"truncated_instances", truncated},
               {"max_lower_over_upper", worst_ratio},
               {"moment_budget", c.moment_budget}};
  s.headline = "product Haagerup bound: max moment lower / upper = " + num(worst_ratio) + " (" +
               std::to_string(truncated) + " schedules truncated)";
  s.csv_columns = {"index", "grade", "support", "lower", "upper", "truncated", "pass"};
}

template <class S>
Json matrix_json(const CoefficientMatrix<S>& a) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < a.dimension(); ++r) {
    Json row = Json::array();
    for (std::size_t col = 0; col < a.dimension(); ++col) {
      const S& v = a(r, col);
      if constexpr (ScalarTraits<S>::exact) {
        row.push_back({to_string(v.real()), to_string(v.imag())});
      } else {
        row.push_back({v.real(), v.imag()});
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
void bilinear_suite(const RunConfig& c, Suite& s) {
  const unsigned n = integer_n(c);
  const std::size_t dim = power_of(n, c.k);
  if (static_cast<double>(dim) * static_cast<double>(dim) > static_cast<double>(c.moment_budget)) {
    throw ResourceLimitError("coefficient matrix has N^(2k) = " +
                             std::to_string(dim * dim) + " entries, above the moment budget " +
                             std::to_string(c.moment_budget));
  }
  std::size_t truncated = 0;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < c.sample_count(); ++i) {
    Rng rng = sample_rng(c, i);
    const CoefficientMatrix<S> a = random_traceless_matrix<S>(rng, n, c.k);
    const MomentBound lower = moment_lower(flatten_bilinear(a), moment_options(c));
    const double bound = bilinear_norm_upper(a);
    truncated += lower.truncated ? 1 : 0;
    if (bound > 0.0) {
      worst_ratio = std::max(worst_ratio, lower.lower / bound);
    }
    s.record(lower.lower <= bound + 1e-9,
             {{"index", i},
              {"frobenius_norm", a.frobenius_norm()},
              {"lower", lower.lower},
              {"bound", bound},
              {"truncated", lower.truncated}},
             [&] { return Json{{"sample", i}, {"a", matrix_json(a)}}; }, lower.lower, bound);
  }
  s.summary = {{"instances", c.sample_count()},
               {"growth_factor", block_growth_factor(n, c.k)},
               {"truncated_instances", truncated},
               {"max_lower_over_bound", worst_ratio}};
  s.headline = "traceless bilinear bound N^(k/2) sqrt((1+9/N)^k-1) |a|_2: max moment lower / bound = " +
               num(worst_ratio);
  s.csv_columns = {"index", "frobenius_norm", "lower", "bound", "truncated", "pass"};
}

PureState sample_state(const RunConfig& c, std::size_t i) {
  Rng rng = sample_rng(c, i);
  return random_state(rng, c.k, 20, c.support_radius(), integer_n(c));
}

std::string state_descriptor(const PureState& xi) {
  std::ostringstream out;
  std::vector<std::pair<WordTuple, Complex>> terms(xi.amplitudes().begin(), xi.amplitudes().end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t t = 0; t < terms.size(); ++t) {
    out << (t ? " + " : "") << "(" << num(terms[t].second.real()) << (terms[t].second.imag() < 0 ? "" : "+")
        << num(terms[t].second.imag()) << "i)" << format(terms[t].first);
  }
  return out.str();
}

void hs_suite(const RunConfig& c, Suite& s) {
  const unsigned n = integer_n(c);
  require_output_dimension(c, default_gram_cap);
  BoundReport report = BoundReport::for_parameters(n, c.k, c.seed);
  for (std::size_t i = 0; i < c.sample_count(); ++i) {
    const PureState xi = sample_state(c, i);
    const BoundSample& b = report.add_sample(xi, state_descriptor(xi));
    s.record(b.hs_distance <= report.hs_bound + 1e-9,
             {{"index", i}, {"support", xi.size()}, {"hs_distance", b.hs_distance}, {"hs_bound", report.hs_bound}},
             [&] { return Json{{"sample", i}, {"state", to_json(xi)}}; }, b.hs_distance,
             report.hs_bound);
  }
  s.summary = {{"hs_bound", report.hs_bound},
               {"max_hs_distance", report.max_hs_distance()},
               {"states", c.sample_count()}};
  s.headline = "Hilbert-Schmidt bound = " + num(report.hs_bound) +
               ", max observed = " + num(report.max_hs_distance()) + " over " +
               std::to_string(c.sample_count()) + " states";
  s.csv_override = to_csv(report);
}

void bounds_suite(const RunConfig& c, Suite& s) {
  const unsigned n = integer_n(c);
  require_output_dimension(c, default_gram_cap);
  BoundReport report = BoundReport::for_parameters(n, c.k, c.seed);
  for (std::size_t i = 0; i < c.sample_count(); ++i) {
    const PureState xi = sample_state(c, i);
    const BoundSample& b = report.add_sample(xi, state_descriptor(xi));
    s.record(b.entropy >= report.hmin_lower - 1e-9,
             {{"index", i},
              {"support", xi.size()},
              {"entropy", units(c, b.entropy)},
              {"hmin_lower", units(c, report.hmin_lower)}},
             [&] { return Json{{"sample", i}, {"state", to_json(xi)}}; }, units(c, b.entropy),
             units(c, report.hmin_lower));
  }
  // (1/k) hmin_lower_bound(N, k) against its limit reg_lower(N).
  Json limit = Json::array();
  double last_gap = 0.0;
  double gap_at_64 = 0.0;
  for (unsigned kk = 1; kk <= 4096; kk *= 2) {
    const double per_copy = hmin_lower_bound(n, kk) / kk;
    last_gap = std::abs(per_copy - report.reg_lower);
    if (kk == 64) {
      gap_at_64 = last_gap;
    }
    limit.push_back({{"k", kk}, {"per_copy", units(c, per_copy)}});
  }
  const bool limit_pass = last_gap < 1e-2;
  if (limit_pass) {
    ++s.passes;
  } else {
    s.failures.push_back({{"input", {{"N", n}, {"k", 4096}}},
                          {"observed", units(c, last_gap)},
                          {"bound", units(c, 1e-2)}});
  }
  s.summary = {{"units", unit_name(c)},
               {"hs_bound", report.hs_bound},
               {"hmin_lower", units(c, report.hmin_lower)},
               {"reg_lower", units(c, report.reg_lower)},
               {"min_entropy", units(c, report.min_entropy())},
               {"limit_sequence", std::move(limit)},
               {"limit_gap_k64", units(c, gap_at_64)},
               {"limit_gap_k4096", units(c, last_gap)},
               {"limit_pass", limit_pass}};
  s.headline = "minimum output entropy lower bound k log N - 2 log(1+sqrt((1+9/N)^k-1)) = " +
               num(units(c, report.hmin_lower)) + " " + unit_name(c) + ", min observed = " +
               num(units(c, report.min_entropy())) + "; per-copy limit log N - log(1+9/N) = " +
               num(units(c, report.reg_lower));
  s.csv_columns = {"index", "support", "entropy", "hmin_lower", "pass"};
}

void schmidt_suite(const RunConfig& c, Suite& s) {
  const unsigned n = integer_n(c);
  require_output_dimension(c, default_gram_cap);
  const ChannelSpec left{n, Side::left, c.k};
  const ChannelSpec right{n, Side::right, c.k};
  double worst = 0.0;
  double worst_j = 0.0;
  for (std::size_t i = 0; i < c.sample_count(); ++i) {
    const PureState xi = sample_state(c, i);
    const std::vector<ChannelSpec> l{left};
    const std::vector<ChannelSpec> r{right};
    const auto direct = direct_output_spectrum(l, xi);
    const auto comp = nonzero_spectrum(complementary_output(left, xi));
    const double mismatch = spectral_mismatch(direct, comp);
    const double j_mismatch =
        spectral_mismatch(direct_output_spectrum(r, xi), direct_output_spectrum(l, j_conjugate(xi)));
    worst = std::max(worst, mismatch);
    worst_j = std::max(worst_j, j_mismatch);
    const double observed = std::max(mismatch, j_mismatch);
    s.record(observed <= 1e-9,
             {{"index", i},
              {"support", xi.size()},
              {"rank", direct.size()},
              {"mismatch", mismatch},
              {"j_mismatch", j_mismatch}},
             [&] { return Json{{"sample", i}, {"state", to_json(xi)}}; }, observed, 1e-9);
  }
  s.summary = {{"states", c.sample_count()},
               {"max_spectral_mismatch", worst},
               {"max_j_mismatch", worst_j},
               {"tolerance", 1e-9}};
  s.headline = "direct vs complementary nonzero spectra: max mismatch = " + num(worst) +
               ", right vs J-conjugated left: max mismatch = " + num(worst_j);
  s.csv_columns = {"index", "support", "rank", "mismatch", "j_mismatch", "pass"};
}

void violation_suite(const RunConfig& c, Suite& s) {
  const ViolationCertificate cert = violation_certificate(c.N);
  for (unsigned n : {2u, 3u, 4u}) {
    const std::vector<ChannelSpec> chain{{n, Side::left, 1}, {n, Side::right, 1}};
    const auto spectrum = direct_output_spectrum(chain, PureState::delta(WordTuple(1)));
    const double gram = von_neumann_entropy(spectrum);
    const double closed = violation_certificate(n).lhs_upper;
    const double diff = std::abs(gram - closed);
    s.record(diff <= 1e-10,
             {{"N", n},
              {"gram_entropy", units(c, gram)},
              {"closed_form", units(c, closed)},
              {"difference", units(c, diff)}},
             [&] { return Json{{"N", n}}; }, units(c, diff), units(c, 1e-10));
  }
  Json cj = to_json(cert);
  for (const char* key : {"lhs_upper", "rhs_lower", "rhs_lower_loose", "gap", "gap_loose"}) {
    cj[key] = units(c, cj[key].get<double>());
  }
  s.summary = {{"units", unit_name(c)}, {"certificate", std::move(cj)}, {"threshold_e18", std::exp(18.0)}};
  s.headline = std::string("composed left/right channel at N = ") + num(c.N) +
               ": output entropy on |e><e| = " + num(units(c, cert.lhs_upper)) +
               ", twice the regularized lower bound = " + num(units(c, cert.rhs_lower)) +
               (cert.violated ? ", additivity violated" : ", no violation") + " (gap = " +
               num(units(c, cert.gap)) + "; with the -18/N form gap = " +
               num(units(c, cert.gap_loose)) + (cert.violated_loose ? ", violated)" : ", not violated)");
  s.csv_columns = {"N", "gram_entropy", "closed_form", "difference", "pass"};
}

void minimize_suite(const RunConfig& c, Suite& s) {
  const unsigned n = integer_n(c);
  OptimizerConfig oc;
  oc.restarts = static_cast<unsigned>(c.sample_count());
  oc.seed = c.seed;
  const MinimizeResult r = minimize_entropy(n, c.k, c.support_radius(), oc);
  const double lower = hmin_lower_bound(n, c.k);
  const double upper = c.k * std::log(static_cast<double>(n));
  const bool in_range = r.entropy >= lower - 1e-9 && r.entropy <= upper + 1e-9;
  s.record(in_range,
           {{"entropy", units(c, r.entropy)},
            {"hmin_lower", units(c, lower)},
            {"witness_upper", units(c, upper)},
            {"basis_size", r.basis_size},
            {"best_restart", r.best_restart}},
           [&] { return Json{{"state", to_json(r.state)}}; }, units(c, r.entropy),
           units(c, r.entropy < lower ? lower : upper));
  s.summary = {{"units", unit_name(c)},
               {"entropy_upper_bound", units(c, r.entropy)},
               {"hmin_lower", units(c, lower)},
               {"delta_e_entropy", units(c, upper)},
               {"basis_size", r.basis_size},
               {"restarts", oc.restarts},
               {"best_restart", r.best_restart},
               {"state", to_json(r.state)}};
  s.headline = "minimum output entropy upper bound on the radius-" +
               std::to_string(c.support_radius()) + " ball = " + num(units(c, r.entropy)) + " " +
               unit_name(c) + " (lower bound " + num(units(c, lower)) + ", delta_e gives " +
               num(units(c, upper)) + ")";
  s.csv_columns = {"entropy", "hmin_lower", "witness_upper", "basis_size", "best_restart", "pass"};
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    std::string t = v.get<std::string>();
    std::replace(t.begin(), t.end(), '"', '\'');
    return "\"" + t + "\"";
  }
  if (v.is_number_float()) {
    return num(v.get<double>());
  }
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += (i ? ";" : "") + csv_cell(v[i]);
    }
    return out;
  }
  return v.dump();
}

std::string generic_csv(const Suite& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.csv_columns.size(); ++i) {
    out << (i ? "," : "") << s.csv_columns[i];
  }
  out << '\n';
  for (const Json& row : s.samples) {
    for (std::size_t i = 0; i < s.csv_columns.size(); ++i) {
      out << (i ? "," : "") << csv_cell(row.at(s.csv_columns[i]));
    }
    out << '\n';
  }
  return out.str();
}

const std::map<std::string, std::function<void(const RunConfig&, Suite&)>>& dispatch() {
  static const std::map<std::string, std::function<void(const RunConfig&, Suite&)>> table{
      {"verify-lemma",
       [](const RunConfig& c, Suite& s) {
         c.precision == Precision::exact ? lemma_suite<ComplexRational>(c, s)
                                         : lemma_suite<Complex>(c, s);
       }},
      {"verify-haagerup",
       [](const RunConfig& c, Suite& s) {
         c.precision == Precision::exact ? haagerup_suite<ComplexRational>(c, s)
                                         : haagerup_suite<Complex>(c, s);
       }},
      {"verify-thm2",
       [](const RunConfig& c, Suite& s) {
         c.precision == Precision::exact ? bilinear_suite<ComplexRational>(c, s)
                                         : bilinear_suite<Complex>(c, s);
       }},
      {"verify-thm3", hs_suite},
      {"bounds", bounds_suite},
      {"schmidt-check", schmidt_suite},
      {"demo-violation", violation_suite},
      {"minimize", minimize_suite},
  };
  return table;
}

}  // namespace

std::size_t RunConfig::sample_count() const {
  return samples.value_or(command == "minimize" ? 8 : 100);
}

unsigned RunConfig::support_radius() const {
  return radius.value_or(command == "minimize" ? 2 : 3);
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : dispatch()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

void validate(const RunConfig& c) {
  if (dispatch().count(c.command) == 0) {
    throw ConfigError("unknown command '" + c.command + "'");
  }
  if (!std::isfinite(c.N) || c.N < 2) {
    throw ConfigError("--N must be at least 2");
  }
  if (c.command != "demo-violation" && (c.N != std::floor(c.N) || c.N > kMaxIntegerN)) {
    throw ConfigError("--N must be an integer in [2, 1048576] for " + c.command);
  }
  if (c.k < 1 || c.k > 16) {
    throw ConfigError("--k must be in [1, 16]");
  }
  if (c.samples && (*c.samples < 1 || *c.samples > 1'000'000)) {
    throw ConfigError("--samples must be in [1, 1000000]");
  }
  if (c.radius && *c.radius > 16) {
    throw ConfigError("--radius must be in [0, 16]");
  }
  if (c.moment_budget < 1) {
    throw ConfigError("--moment-budget must be positive");
  }
}

Json config_to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"N", c.N},
          {"k", c.k},
          {"samples", c.sample_count()},
          {"seed", c.seed},
          {"radius", c.support_radius()},
          {"moment_budget", c.moment_budget},
          {"precision", c.precision == Precision::exact ? "exact" : "float"},
          {"format", c.format == Format::json ? "json" : c.format == Format::csv ? "csv" : "text"},
          {"log_base", c.log_base == LogBase::e ? "e" : "2"}};
}

RunResult run(const RunConfig& config) {
  validate(config);
  Suite suite;
  dispatch().at(config.command)(config, suite);

  RunResult result;
  result.exit_code = suite.failures.empty() ? exit_ok : exit_violation;
  result.report = {{"command", config.command},
                   {"config", config_to_json(config)},
                   {"passes", suite.passes},
                   {"failures", suite.failures},
                   {"summary", suite.summary},
                   {"samples", suite.samples}};
  result.csv = suite.csv_override.empty() ? generic_csv(suite) : suite.csv_override;

  std::ostringstream text;
  text << config.command << ": " << suite.headline << '\n';
  text << "passes: " << suite.passes << ", failures: " << suite.failures.size() << '\n';
  for (const Json& f : suite.failures) {
    text << "  failure: observed " << num(f["observed"].get<double>()) << " against bound "
         << num(f["bound"].get<double>()) << " for " << f["input"].dump() << '\n';
  }
  result.text = text.str();
  return result;
}

std::string render(const RunResult& result, Format format) {
  switch (format) {
    case Format::json:
      return result.report.dump(2) + '\n';
    case Format::csv:
      return result.csv;
    case Format::text:
      return result.text;
  }
  return {};
}

}  // namespace freemoe::cli
