#include "dicke/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.size() - start : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidParameter("cannot parse " + std::string(what) + " from '" + s + "'");
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidParameter("cannot parse " + std::string(what) + " from '" + s + "'");
  return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw InvalidParameter("cannot parse " + std::string(what) + " from '" + s + "'");
}

int two_j_from(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(j) || std::abs(twice - rounded) > 1e-9 || rounded < 1.0)
    throw InvalidParameter("j must be a positive integer or half-integer, got " + format_double(j));
  return static_cast<int>(rounded);
}

template <class T>
void take(std::optional<T>& into, const std::optional<T>& from) {
  if (from) into = from;
}

}  // namespace

std::string csv_version_line() { return "# dicke-spectra v" + std::string(kVersion); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string format_j(int two_j) {
  return two_j % 2 == 0 ? std::to_string(two_j / 2) : std::to_string(two_j / 2) + ".5";
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::string csv_body(std::string_view csv) {
  std::string out;
  std::istringstream in{std::string(csv)};
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out += line + "\n";
  return out;
}

// ---------------------------------------------------------------------------

ConfigMap parse_config(std::istream& in) {
  ConfigMap out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config line " + std::to_string(number) + ": expected key = value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    if (key.empty()) throw InvalidParameter("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return out;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string_view to_string(SweptParameter p) {
  switch (p) {
    case SweptParameter::J:
      return "j";
    case SweptParameter::Gamma:
      return "gamma";
    case SweptParameter::Omega0:
      return "omega0";
    case SweptParameter::Cutoff:
      return "cutoff";
  }
  return "unknown";
}

SweptParameter parse_swept_parameter(std::string_view text) {
  const std::string s = trim(text);
  if (s == "j") return SweptParameter::J;
  if (s == "gamma") return SweptParameter::Gamma;
  if (s == "omega0") return SweptParameter::Omega0;
  if (s == "cutoff") return SweptParameter::Cutoff;
  throw InvalidParameter("unknown sweep parameter '" + s + "' (expected j, gamma, omega0 or cutoff)");
}

Settings Settings::from_config(const ConfigMap& config) {
  Settings s;
  for (const auto& [key, value] : config) {
    if (key == "omega") s.omega = parse_double(value, key);
    else if (key == "omega0") s.omega0 = parse_double(value, key);
    else if (key == "gamma") s.gamma = parse_double(value, key);
    else if (key == "j") s.j = parse_double(value, key);
    else if (key == "epsilon") s.epsilon = parse_double(value, key);
    else if (key == "basis") s.basis = value;
    else if (key == "cutoff") s.cutoff = parse_int(value, key);
    else if (key == "cutoff_limit") s.cutoff_limit = parse_int(value, key);
    else if (key == "level") s.level = parse_int(value, key);
    else if (key == "workers") s.workers = parse_int(value, key);
    else if (key == "out") s.out = value;
    else if (key == "sweep") s.sweep = value;
    else if (key == "grid") s.grid = value;
    else if (key == "range") s.range = value;
    else if (key == "timing") s.timing = parse_bool(value, key);
    else throw InvalidParameter("unknown config key '" + key + "'");
  }
  return s;
}

Settings Settings::overlay(const Settings& flags) const {
  Settings s = *this;
  take(s.omega, flags.omega);
  take(s.omega0, flags.omega0);
  take(s.gamma, flags.gamma);
  take(s.j, flags.j);
  take(s.epsilon, flags.epsilon);
  take(s.basis, flags.basis);
  take(s.cutoff, flags.cutoff);
  take(s.cutoff_limit, flags.cutoff_limit);
  take(s.level, flags.level);
  take(s.workers, flags.workers);
  take(s.out, flags.out);
  take(s.sweep, flags.sweep);
  take(s.grid, flags.grid);
  take(s.range, flags.range);
  take(s.timing, flags.timing);
  return s;
}

ModelParams Settings::params() const {
  return ModelParams(omega.value_or(1.0), omega0.value_or(1.0), gamma.value_or(0.5),
                     two_j_from(j.value_or(1.0)), epsilon.value_or(ModelParams::kDefaultEpsilon));
}

std::vector<BasisKind> Settings::basis_kinds() const {
  const std::string b = trim(basis.value_or("both"));
  if (b == "both") return {BasisKind::Fock, BasisKind::Coherent};
  return {parse_basis_kind(b)};
}

std::vector<double> parse_grid(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) return {};
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw InvalidParameter("grid range must be start:stop:step, got '" + s + "'");
    const double start = parse_double(parts[0], "grid start");
    const double stop = parse_double(parts[1], "grid stop");
    const double step = parse_double(parts[2], "grid step");
    if (!(step > 0.0)) throw InvalidParameter("grid step must be positive");
    if (stop < start) return {};
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1'000'000) throw InvalidParameter("grid has too many points");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    // start + i*step rather than accumulation, so 0.1-steps land on decimals.
    for (long long i = 0; i < count; ++i) {
      const double v = start + static_cast<double>(i) * step;
      out.push_back(std::stod(format_double(std::round(v * 1e12) / 1e12)));
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item, "grid value"));
  return out;
}

std::pair<int, int> parse_cutoff_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw InvalidParameter("cutoff range must be first:last");
  return {parse_int(parts[0], "range start"), parse_int(parts[1], "range end")};
}

// ---------------------------------------------------------------------------

ModelParams RunRecord::params(double epsilon) const {
  return ModelParams(omega, omega0, gamma, two_j, epsilon);
}

PointResult run_point(const PointRequest& request, const ConvergenceOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const ModelParams& p = request.params;
  PointResult result;
  RunRecord& r = result.record;
  r.omega = p.omega();
  r.omega0 = p.omega0();
  r.gamma = p.gamma();
  r.two_j = p.two_j();
  r.basis = request.kind;
  r.level = request.level;
  try {
    if (request.cutoff) {
      EnergyLadder ladder(p, request.kind, request.level, options);
      r.min_cutoff = *request.cutoff;
      r.energy = ladder.energy(*request.cutoff);
      r.delta_e = ladder.delta(*request.cutoff);
      r.converged = r.delta_e < p.epsilon();
    } else {
      const int limit = request.cutoff_limit.value_or(default_cutoff_limit(p, request.kind));
      auto report = find_minimal_cutoff(p, request.kind, request.level, limit, options);
      r.min_cutoff = report.minimal_cutoff;
      r.energy = report.energy_at_min;
      r.delta_e = report.final_delta();
      r.converged = report.converged;
      result.report = std::move(report);
    }
  } catch (const std::exception& e) {
    result.error = e.what();
    result.invalid_input = dynamic_cast<const InvalidParameter*>(&e) || dynamic_cast<const DomainError*>(&e) ||
                           dynamic_cast<const std::overflow_error*>(&e);
    r.converged = false;
    r.energy = std::nan("");
    r.delta_e = std::nan("");
  }
  if (request.record_timing)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

void SweepConfig::validate() const {
  for (const double v : grid) {
    switch (swept) {
      case SweptParameter::J:
        two_j_from(v);
        break;
      case SweptParameter::Gamma:
        fixed.with_gamma(v);
        break;
      case SweptParameter::Omega0:
        fixed.with_omega0(v);
        break;
      case SweptParameter::Cutoff:
        if (v < 0.0 || v != std::floor(v))
          throw InvalidParameter("cutoff grid values must be non-negative integers, got " + format_double(v));
        break;
    }
  }
  if (level < 0) throw InvalidParameter("level must be non-negative");
  if (basis_kinds.empty()) throw InvalidParameter("no basis selected");
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<PointResult> run_sweep(const SweepConfig& config, const ConvergenceOptions& options) {
  config.validate();
  if (config.swept == SweptParameter::Cutoff && config.cutoff)
    throw InvalidParameter("a cutoff sweep cannot also fix the cutoff");

  std::vector<PointRequest> requests;
  for (const double v : config.grid) {
    for (const BasisKind kind : config.basis_kinds) {
      PointRequest req{config.fixed, kind, config.level, config.cutoff, config.cutoff_limit,
                       config.record_timing};
      switch (config.swept) {
        case SweptParameter::J:
          req.params = config.fixed.with_two_j(two_j_from(v));
          break;
        case SweptParameter::Gamma:
          req.params = config.fixed.with_gamma(v);
          break;
        case SweptParameter::Omega0:
          req.params = config.fixed.with_omega0(v);
          break;
        case SweptParameter::Cutoff:
          req.cutoff = static_cast<int>(v);
          break;
      }
      requests.push_back(std::move(req));
    }
  }
  std::vector<PointResult> results(requests.size());
  parallel_for(requests.size(), config.workers,
               [&](std::size_t i) { results[i] = run_point(requests[i], options); });
  return results;
}

void write_sweep_csv(std::ostream& out, const std::vector<RunRecord>& rows,
                     const std::vector<std::string>& comments) {
  out << csv_version_line() << "\n";
  for (const auto& c : comments) out << "# " << c << "\n";
  out << kSweepColumns << "\n";
  for (const auto& r : rows) {
    out << format_double(r.omega) << ',' << format_double(r.omega0) << ',' << format_double(r.gamma)
        << ',' << format_j(r.two_j) << ',' << to_string(r.basis) << ',' << r.level << ','
        << r.min_cutoff << ',' << format_double(r.energy) << ',' << format_double(r.delta_e) << ','
        << (r.converged ? "true" : "false") << ',';
    if (r.wall_ms) out << format_double(std::round(*r.wall_ms * 1000.0) / 1000.0);
    out << "\n";
  }
}

std::vector<RunRecord> parse_sweep_csv(std::istream& in) {
  std::vector<RunRecord> rows;
  std::string version;
  std::string line;
  bool header_seen = false;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      constexpr std::string_view tag = "# dicke-spectra v";
      if (line.rfind(tag, 0) == 0) version = line.substr(tag.size());
      continue;
    }
    if (!header_seen) {
      if (line != kSweepColumns) throw InvalidParameter("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 11)
      throw InvalidParameter("CSV line " + std::to_string(number) + ": expected 11 fields");
    RunRecord r;
    r.omega = parse_double(f[0], "omega");
    r.omega0 = parse_double(f[1], "omega0");
    r.gamma = parse_double(f[2], "gamma");
    r.two_j = two_j_from(parse_double(f[3], "j"));
    r.basis = parse_basis_kind(f[4]);
    r.level = parse_int(f[5], "level");
    r.min_cutoff = parse_int(f[6], "min_cutoff");
    r.energy = f[7] == "nan" ? std::nan("") : parse_double(f[7], "energy");
    r.delta_e = f[8] == "nan" ? std::nan("") : parse_double(f[8], "delta_e");
    r.converged = parse_bool(f[9], "converged");
    if (!f[10].empty()) r.wall_ms = parse_double(f[10], "wall_ms");
    if (!version.empty()) r.version = version;
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw InvalidParameter("CSV has no column header");
  return rows;
}

double rerun_energy(const RunRecord& record, const ConvergenceOptions& options) {
  EnergyLadder ladder(record.params(), record.basis, record.level, options);
  return ladder.energy(record.min_cutoff);
}

// ---------------------------------------------------------------------------

std::vector<BoundRow> bound_compare(const ModelParams& fixed, const std::vector<double>& gammas,
                                    std::optional<int> cutoff_limit, int workers,
                                    const ConvergenceOptions& options) {
  std::vector<BoundRow> rows(gammas.size(), BoundRow{fixed, {}, {}, {}, {}});
  for (std::size_t i = 0; i < gammas.size(); ++i) rows[i].params = fixed.with_gamma(gammas[i]);
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    BoundRow& row = rows[i];
    if (!is_superradiant(row.params)) {
      row.status = "normal-phase";
      return;
    }
    row.n_max_eq4 = analytic_nmax_bound(row.params);
    const int limit = cutoff_limit.value_or(default_cutoff_limit(row.params, BasisKind::Fock));
    const auto report = find_minimal_cutoff(row.params, BasisKind::Fock, 0, limit, options);
    if (!report.converged) {
      row.status = "not-converged";
      return;
    }
    row.n_max_scan = report.minimal_cutoff;
    row.relative_difference = (report.minimal_cutoff - *row.n_max_eq4) / *row.n_max_eq4;
    row.status = "ok";
  });
  return rows;
}

void write_bound_csv(std::ostream& out, const std::vector<BoundRow>& rows,
                     const std::vector<std::string>& comments) {
  out << csv_version_line() << "\n";
  for (const auto& c : comments) out << "# " << c << "\n";
  out << kBoundColumns << "\n";
  for (const auto& r : rows) {
    out << format_double(r.params.omega()) << ',' << format_double(r.params.omega0()) << ','
        << format_double(r.params.gamma()) << ',' << format_j(r.params.two_j()) << ',';
    if (r.n_max_scan) out << *r.n_max_scan;
    out << ',';
    if (r.n_max_eq4) out << format_double(*r.n_max_eq4);
    out << ',';
    if (r.relative_difference) out << format_double(*r.relative_difference);
    out << ',' << r.status << "\n";
  }
}

void write_precision_csv(std::ostream& out, const ModelParams& params, BasisKind kind, int level,
                         const PrecisionFit& fit, const std::vector<std::string>& comments) {
  out << csv_version_line() << "\n";
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "# fit: -log10(delta_e) = " << format_double(fit.intercept) << " + "
      << format_double(fit.slope) << " * cutoff; r2 = " << format_double(fit.r_squared) << "\n";
  out << kPrecisionColumns << "\n";
  for (const auto& s : fit.scanned) {
    const bool used = s.delta_e >= kPrecisionFloor;
    out << format_double(params.omega()) << ',' << format_double(params.omega0()) << ','
        << format_double(params.gamma()) << ',' << format_j(params.two_j()) << ',' << to_string(kind)
        << ',' << level << ',' << s.cutoff << ',' << format_double(s.energy) << ','
        << format_double(s.delta_e) << ',';
    if (s.delta_e > 0.0) out << format_double(-std::log10(s.delta_e));
    out << ',' << (used ? "true" : "false") << "\n";
  }
}

}  // namespace dicke
