// Command line front end: certification, Lie algebra synthesis, torsion
// reduction and the numerical realization check, over JSON instance files.
//
// Exit codes: 0 = pass, 1 = a mathematical condition failed, 2 = input error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "infhom/infhom.hpp"

namespace {

using infhom::Json;

struct CommonOptions {
  std::string input;
  std::string output;
  std::string format = "json";
  bool use_generators = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_generators) {
  cmd->add_option("instance", opts.input, "instance file (positional)");
  cmd->add_option("-i,--input", opts.input, "instance file");
  cmd->add_option("-o,--output", opts.output, "write the report here instead of stdout");
  cmd->add_option("--format", opts.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  if (with_generators)
    cmd->add_flag("--generators", opts.use_generators,
                  "also check the group-level invariance conditions against the "
                  "instance's group_generators");
}

void emit(const CommonOptions& opts, const Json& j, const std::string& text) {
  const std::string payload = opts.format == "json" ? j.dump(2) + "\n" : text;
  if (opts.output.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opts.output);
    if (!out) throw infhom::ParseError(opts.output, "cannot open file for writing");
    out << payload;
  }
}

infhom::InstanceFile load(const CommonOptions& opts) {
  if (opts.input.empty()) throw infhom::ParseError("input", "no instance file given");
  return infhom::parse_instance(opts.input);
}

int run_check(const CommonOptions& opts) {
  const auto inst = load(opts);
  const auto h = inst.subalgebra();
  const auto triple = inst.triple();
  std::optional<infhom::GroupGenerators> gens;
  if (opts.use_generators) {
    if (inst.group_generators.empty())
      throw infhom::ParseError("group_generators",
                               "--generators given but the instance has none");
    gens = inst.generators();
  }
  const auto report = infhom::run_certificate(h, triple, gens ? &*gens : nullptr);
  emit(opts, infhom::certificate_to_json(report), infhom::certificate_to_text(report));
  return report.pass() ? 0 : 1;
}

int run_build(const CommonOptions& opts) {
  const auto inst = load(opts);
  const auto h = inst.subalgebra();
  auto triple = inst.triple();
  const auto report = infhom::run_certificate(h, triple);
  if (!report.pass()) {
    emit(opts, infhom::certificate_to_json(report), infhom::certificate_to_text(report));
    return 1;
  }
  if (!triple.T.is_zero()) triple = infhom::remove_torsion(h.basis(), triple);

  const auto algebra = infhom::build_bracket(h, triple.R, triple.lam);
  const auto jacobi = infhom::check_jacobi(algebra);
  const auto inertia = infhom::killing_inertia(algebra);
  const auto derived = infhom::derived_series_dims(algebra);
  const Json j = infhom::build_output_to_json(algebra, jacobi, inertia, derived);

  std::ostringstream text;
  text << "dim: " << algebra.dim() << "\n";
  const auto labels = algebra.basis_labels();
  for (std::size_t p = 0; p < algebra.dim(); ++p)
    for (std::size_t q = p + 1; q < algebra.dim(); ++q) {
      text << "[" << labels[p] << "," << labels[q] << "] =";
      for (std::size_t s = 0; s < algebra.dim(); ++s)
        text << " " << infhom::rational_to_string(algebra.bracket(p, q)[s]);
      text << "\n";
    }
  text << "killing_inertia: (" << inertia.positive << "," << inertia.negative << ","
       << inertia.zero << ")\n"
       << "jacobi: " << (jacobi.pass ? "pass" : "fail") << "\n";
  emit(opts, j, text.str());
  return jacobi.pass ? 0 : 1;
}

int run_reduce(const CommonOptions& opts) {
  const auto inst = load(opts);
  const auto h = inst.subalgebra();
  const auto triple = inst.triple();

  Json note = Json::object();
  infhom::InstanceFile reduced = inst;
  if (triple.T.is_zero()) {
    note["torsion_removed"] = false;
    note["note"] = "input is already torsion-free; identity transform";
  } else {
    const auto out = infhom::remove_torsion(h.basis(), triple);
    reduced.T0 = out.T;
    reduced.lambda = out.lam;
    reduced.R0 = out.R;
    note["torsion_removed"] = true;
    note["convention"] = "s0 = T0/2 (the nabla' = nabla + t/2 normalization)";
    Json s0 = Json::array();
    for (std::size_t i = 0; i < inst.dimension; ++i)
      s0.push_back(infhom::matrix_to_json(
          infhom::torsion_half_contraction(triple.T, i)));
    note["s0"] = std::move(s0);
  }

  const Json inst_json = infhom::instance_to_json(reduced);
  if (!opts.output.empty()) {
    infhom::write_json_file(opts.output, inst_json);
    std::cout << note.dump(2) << "\n";
  } else {
    Json both = Json::object();
    both["instance"] = inst_json;
    both["corrections"] = note;
    std::cout << both.dump(2) << "\n";
  }
  return 0;
}

int run_realize(const CommonOptions& opts, const infhom::RealizationConfig& cfg) {
  const auto inst = load(opts);
  const auto h = inst.subalgebra();
  auto triple = inst.triple();
  const auto report = infhom::run_certificate(h, triple);
  if (!report.pass()) {
    emit(opts, infhom::certificate_to_json(report), infhom::certificate_to_text(report));
    return 1;
  }
  if (!triple.T.is_zero()) triple = infhom::remove_torsion(h.basis(), triple);

  const auto algebra = infhom::build_bracket(h, triple.R, triple.lam);
  const auto adj = infhom::adjoint_realization(algebra);
  if (!adj.supported) {
    emit(opts, infhom::realize_output_to_json(adj, cfg, nullptr, nullptr),
         "status: unsupported\nreason: " + adj.reason + "\n");
    return 0;
  }
  const auto curv = infhom::curvature_fd_check(algebra, adj, h, triple.lam, triple.R, cfg);
  const auto itors = infhom::inner_torsion_fd_check(algebra, adj, h, triple.lam, cfg);
  const Json j = infhom::realize_output_to_json(adj, cfg, &curv, &itors);

  std::ostringstream text;
  text << "status: ok\n"
       << "curvature: " << (curv.pass ? "pass" : "fail")
       << " (max deviation " << curv.max_deviation << ")\n"
       << "inner_torsion: " << (itors.pass ? "pass" : "fail")
       << " (max deviation " << itors.max_deviation << ")\n";
  emit(opts, j, text.str());
  return (curv.pass && itors.pass) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certify characteristic-tensor candidates, build the associated Lie "
               "algebra, reduce torsion, and verify the local model numerically"};
  app.require_subcommand(1);

  CommonOptions check_opts, build_opts, reduce_opts, realize_opts;
  infhom::RealizationConfig cfg;

  auto* check = app.add_subcommand("check", "run the certificate on an instance");
  add_common(check, check_opts, true);
  auto* build = app.add_subcommand("build", "build the Lie algebra a = h (+) m");
  add_common(build, build_opts, false);
  auto* reduce = app.add_subcommand("reduce-torsion", "strip the torsion off an instance");
  add_common(reduce, reduce_opts, false);
  auto* realize = app.add_subcommand("realize", "numerically verify the local model");
  add_common(realize, realize_opts, false);
  realize->add_option("--fd-step", cfg.fd_step, "central difference step");
  realize->add_option("--tol", cfg.tolerance, "deviation tolerance at the identity");
  realize->add_option("--seed", cfg.seed, "seed for the offset sample points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(check_opts);
    if (build->parsed()) return run_build(build_opts);
    if (reduce->parsed()) return run_reduce(reduce_opts);
    if (realize->parsed()) return run_realize(realize_opts, cfg);
  } catch (const infhom::TorsionPreconditionError& e) {
    Json j = Json::object();
    j["error"] = e.what();
    j["witness"] = infhom::witness_to_json(e.witness);
    std::cout << j.dump(2) << "\n";
    return 1;
  } catch (const infhom::BuildError& e) {
    Json j = Json::object();
    j["error"] = e.what();
    j["recheck"] = e.recheck;
    j["witness"] = infhom::witness_to_json(e.witness);
    std::cout << j.dump(2) << "\n";
    return 1;
  } catch (const infhom::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
