#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"

using quadsuite::cli::Format;
using quadsuite::cli::RunConfig;

namespace {

void add_common(CLI::App& sub, RunConfig& c) {
  sub.add_option("--state", c.state, "vacuum | number:<n> | coherent:<re>,<im> | squeezed:<r>,<phi> | file:<path>");
  sub.add_option("--dim", c.dim, "Fock truncation dimension");
  sub.add_option("--theta", c.theta, "quadrature angle (radians)");
  sub.add_option("--grid", c.grid, "sample grid min:max:step");
  sub.add_option("-o,--output", c.output, "output file (default stdout)");
  sub.add_option("--format", c.format, "csv | json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  sub.add_option("--threads", c.threads, "worker thread cap (fallback: QUADSUITE_THREADS)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrature, phase-space and tomography toolkit"};
  app.require_subcommand(1);
  RunConfig c;

  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    add_common(*s, c);
    s->callback([&c, name] { c.command = name; });
    return s;
  };

  sub("quad-density", "density of the rotated quadrature Q_theta");
  sub("wigner", "Wigner function on a square grid");
  sub("radon", "Radon transform of the Wigner function against the quadrature density");
  auto* gk = sub("gk-density", "covariant phase-space density g_K");
  gk->add_option("--kernel", c.kernel, "generating state K (state grammar)");
  auto* strip = sub("strip-prob", "G_K probability of the strip Z(theta, X)");
  strip->add_option("--kernel", c.kernel, "generating state K (state grammar)");
  strip->add_option("--interval", c.interval, "X as lo:hi");
  auto* gen = sub("tomo-generate", "tabulate quadrature densities at J angles");
  gen->add_option("--angles", c.angles, "angle count J");
  auto* rec = sub("tomo-reconstruct", "reconstruct a state from a dataset");
  rec->add_option("--input", c.input, "dataset file")->required();
  rec->add_option("--state-out", c.state_out, "write the reconstructed state as JSON");
  auto* mk = sub("markov-kernel", "generalized Markov kernel for K = |h_n><h_n|");
  mk->add_option("--n", c.n, "number-state index");
  mk->add_option("--q", c.q, "phase point q");
  mk->add_option("--p", c.p, "phase point p");
  mk->add_option("--form", c.form, "derivative | series");
  auto* md = sub("moments-demo", "sequential Q then Q_theta moment deconvolution");
  md->add_option("--mu-var", c.mu_var, "variance of the first smearing");
  md->add_option("--nu-var", c.nu_var, "variance of the second smearing");
  md->add_option("--k-max", c.k_max, "highest moment order");
  auto* cr = sub("complementarity-report", "commutator, uncertainty and trace-formula summary");
  cr->add_option("--interval", c.interval, "X = Y as lo:hi");

  // tomo-reconstruct compares against --state only when it is given.
  rec->preparse_callback([&c](std::size_t) { c.state = "none"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : quadsuite::cli::kExitConfig;
  }
  return quadsuite::cli::run(c, std::cout, std::cerr);
}
