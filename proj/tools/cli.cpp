#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "quadsuite/errors.hpp"
#include "quadsuite/parallel.hpp"
#include "quadsuite/phase_space.hpp"
#include "quadsuite/quadrature.hpp"
#include "quadsuite/state_io.hpp"
#include "quadsuite/tomography.hpp"
#include "quadsuite/moments.hpp"
#include "quadsuite/wigner_radon.hpp"

namespace quadsuite::cli {

namespace {

// Bad flags, grids, intervals or state specs. Maps to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
auto as_config(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ConfigError(what + ": " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c, bool json) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return json ? "null" : fmt(*d);
    return fmt(*d);
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  return json ? nlohmann::json(s).dump() : s;
}

void write_table(std::ostream& out, const Table& t, Format format) {
  if (format == Format::csv) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << t.columns[k];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << cell_text(row[k], false);
      out << '\n';
    }
    return;
  }
  auto object = [&](const std::vector<Cell>& row) {
    std::string s = "{";
    for (std::size_t k = 0; k < row.size(); ++k) {
      s += (k ? ", \"" : "\"") + t.columns[k] + "\": " + cell_text(row[k], true);
    }
    return s + "}";
  };
  if (t.rows.size() == 1) {
    out << object(t.rows[0]) << '\n';
    return;
  }
  out << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << "  " << object(t.rows[r]) << (r + 1 < t.rows.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

// 2D dumps share one axis for q and p.
void write_grid(std::ostream& out, const GridFunction& g, Format format) {
  const Axis& q = g.axis(0);
  const Axis& p = g.axis(1);
  if (format == Format::json) {
    out << "{\"q_min\": " << fmt(q.min) << ", \"q_max\": " << fmt(q.max) << ", \"p_min\": "
        << fmt(p.min) << ", \"p_max\": " << fmt(p.max) << ", \"step\": " << fmt(q.step)
        << ", \"values\": [";
    for (std::size_t i = 0; i < g.values().size(); ++i) out << (i ? ", " : "") << fmt(g.values()[i]);
    out << "]}\n";
    return;
  }
  out << "# " << fmt(q.min) << ' ' << fmt(q.max) << ' ' << fmt(p.min) << ' ' << fmt(p.max) << ' '
      << fmt(q.step) << '\n';
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? " " : "") << fmt(g(i, j));
    out << '\n';
  }
}

TruncatedState load_state(const std::string& spec, int dim) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    if (!std::filesystem::is_regular_file(path)) throw ConfigError("state file not found: " + path);
    return read_state_file(path);  // content problems stay ValidationError (exit 3)
  }
  return as_config("--state " + spec, [&] { return parse_state_spec(spec, dim); });
}

Axis grid_or(const RunConfig& c, const char* fallback) {
  return as_config("--grid", [&] { return Axis::parse(c.grid.empty() ? fallback : c.grid); });
}

IntervalSet interval(const RunConfig& c) {
  return as_config("--interval", [&] { return IntervalSet::parse(c.interval); });
}

void warn_leaky(const TruncatedState& s, const std::string& name, std::ostream& err) {
  if (s.leaky()) {
    err << "warning: " << name << " truncated at dim " << s.dim() << " loses norm " << s.leakage() << '\n';
  }
}

void check_config(const RunConfig& c) {
  if (c.dim < 1) throw ConfigError("--dim must be >= 1");
  if (c.angles < 1) throw ConfigError("--angles must be >= 1");
  if (c.threads < 0) throw ConfigError("--threads must be >= 0");
  if (!std::isfinite(c.theta)) throw ConfigError("--theta must be finite");
  bool known = false;
  for (const auto& name : commands()) known = known || name == c.command;
  if (!known) throw ConfigError("unknown command '" + c.command + "'");
}

int thread_setting(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("QUADSUITE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) throw ConfigError("QUADSUITE_THREADS must be a non-negative integer");
    return static_cast<int>(v);
  }
  return 0;
}

void quad_density(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  warn_leaky(rho, "state", err);
  const auto xs = grid_or(c, "-6:6:0.01").nodes();
  const auto ys = quadrature_density(rho, c.theta, xs);
  Table t{{"x", "density"}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i) t.rows.push_back({xs[i], ys[i]});
  write_table(out, t, c.format);
}

void wigner_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  warn_leaky(rho, "state", err);
  const Axis ax = grid_or(c, "-6:6:0.05");
  write_grid(out, wigner_grid(rho, ax, ax), c.format);
}

void radon_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  warn_leaky(rho, "state", err);
  RadonGrid grid;
  grid.offsets = grid_or(c, "-6:6:0.02");
  const auto xs = grid.offsets.nodes();
  const auto w = wigner_grid(rho, grid.phase, grid.phase);
  const auto lhs = radon(w, c.theta, xs, grid.radon);
  const auto rhs = quadrature_density(rho, c.theta, xs);
  Table t{{"x", "radon", "density", "abs_error"}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    t.rows.push_back({xs[i], lhs[i], rhs[i], std::abs(lhs[i] - rhs[i])});
  }
  write_table(out, t, c.format);
}

void gk_density_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  auto K = load_state(c.kernel, c.dim);
  warn_leaky(rho, "state", err);
  warn_leaky(K, "kernel", err);
  const Axis ax = grid_or(c, "-6:6:0.05");
  write_grid(out, gk_density_grid(rho, K, ax, ax), c.format);
}

void strip_prob(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  auto K = load_state(c.kernel, c.dim);
  warn_leaky(rho, "state", err);
  warn_leaky(K, "kernel", err);
  const auto X = interval(c);
  Table t{{"theta", "interval", "probability"}, {{c.theta, c.interval, strip_probability(rho, K, c.theta, X)}}};
  write_table(out, t, c.format);
}

void tomo_generate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  warn_leaky(rho, "state", err);
  generate_dataset(rho, c.angles, grid_or(c, "-8:8:0.02")).write(out);
}

void tomo_reconstruct(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.input.empty()) throw ConfigError("tomo-reconstruct needs --input <dataset>");
  std::ifstream in(c.input);
  if (!in) throw ConfigError("dataset not found: " + c.input);
  const auto data = QuadratureDataset::read(in);
  const auto rec = reconstruct_state(data, c.dim);
  Table t{{"dim", "angles", "clipped_weight", "min_eigenvalue", "max_condition", "max_residual", "frobenius_error"},
          {{static_cast<long long>(c.dim), static_cast<long long>(data.angle_count()), rec.clipped_weight,
            rec.min_eigenvalue, rec.max_condition, rec.max_residual, std::nan("")}}};
  // --state, when given explicitly, is the reference for the round-trip error.
  if (!c.state.empty() && c.state != "none") {
    auto ref = load_state(c.state, c.dim);
    const int d = std::max(ref.dim(), rec.state.dim());
    t.rows[0][6] = (ref.padded(d).matrix() - rec.state.padded(d).matrix()).norm();
  }
  if (!c.state_out.empty()) {
    std::ofstream s(c.state_out);
    if (!s) throw ConfigError("cannot write " + c.state_out);
    write_state(s, rec.state);
  }
  write_table(out, t, c.format);
}

void markov_kernel(const RunConfig& c, std::ostream& out, std::ostream&) {
  KernelForm form;
  if (c.form == "derivative") {
    form = KernelForm::derivative;
  } else if (c.form == "series") {
    form = KernelForm::series;
  } else {
    throw ConfigError("--form must be derivative or series");
  }
  const auto xs = grid_or(c, "-4:4:0.05").nodes();
  Table t{{"x", "kernel"}, {}};
  for (double x : xs) {
    t.rows.push_back({x, as_config("markov-kernel", [&] {
                        return markov_kernel_number(c.n, {c.q, c.p}, c.theta, x, form);
                      })});
  }
  write_table(out, t, c.format);
}

void moments_demo(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  warn_leaky(rho, "state", err);
  const auto report = as_config("moments-demo", [&] {
    return sequential_demo(rho, c.theta, c.mu_var, c.nu_var, c.k_max);
  });
  if (c.format == Format::json) {
    out << to_json(report).dump(2) << '\n';
    return;
  }
  Table t{{"channel", "k", "truth", "smeared", "recovered"}, {}};
  for (const auto* ch : {&report.first, &report.second}) {
    const std::string name = ch == &report.first ? "Q" : "Q_theta";
    for (int k = 0; k <= report.k_max; ++k) {
      t.rows.push_back({name, static_cast<long long>(k), ch->truth[k], ch->smeared[k], ch->recovered[k]});
    }
  }
  write_table(out, t, c.format);
}

void complementarity(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto rho = load_state(c.state, c.dim);
  warn_leaky(rho, "state", err);
  const auto X = interval(c);
  const double s = std::sin(c.theta);
  const double tp = as_config("trace pair", [&] { return trace_pair(X, X, c.theta, c.dim); });
  const double limit = X.lebesgue() * X.lebesgue() / (2.0 * M_PI * std::abs(s));
  double comm = std::nan("");
  if (c.dim >= 4) {
    const CMatrix block = commutator_block(c.theta, c.dim);
    comm = (block - Complex(0.0, s) * CMatrix::Identity(block.rows(), block.cols())).cwiseAbs().maxCoeff();
  }
  const double product = uncertainty_product(rho, c.theta);
  const double bound = s * s / 4.0;
  const double saturated = uncertainty_product(saturating_gaussian(c.theta, 0.5, c.dim), c.theta);
  Table t{{"theta", "dim", "trace_pair", "trace_pair_limit", "commutator_deviation", "uncertainty_product",
           "uncertainty_bound", "gaussian_product"},
          {{c.theta, static_cast<long long>(c.dim), tp, limit, comm, product, bound, saturated}}};
  write_table(out, t, c.format);
}

void dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string& cmd = c.command;
  if (cmd == "quad-density") return quad_density(c, out, err);
  if (cmd == "wigner") return wigner_cmd(c, out, err);
  if (cmd == "radon") return radon_cmd(c, out, err);
  if (cmd == "gk-density") return gk_density_cmd(c, out, err);
  if (cmd == "strip-prob") return strip_prob(c, out, err);
  if (cmd == "tomo-generate") return tomo_generate(c, out, err);
  if (cmd == "tomo-reconstruct") return tomo_reconstruct(c, out, err);
  if (cmd == "markov-kernel") return markov_kernel(c, out, err);
  if (cmd == "moments-demo") return moments_demo(c, out, err);
  return complementarity(c, out, err);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_config(config);
    set_thread_limit(thread_setting(config));
    // Buffer so a failing command never leaves a partial artifact behind.
    std::ostringstream buffer;
    dispatch(config, buffer, err);
    if (config.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + config.output);
      file << buffer.str();
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "error: validation failed: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "error: numerical contract failed: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace quadsuite::cli
