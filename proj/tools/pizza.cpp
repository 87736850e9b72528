// Command-line surface: build and inspect arrangements, run the volume
// engines, execute the verification suites, and emit sweep data.
//
// Exit codes: 0 success, 1 suite assertion failure, 2 usage or validation
// error, 3 engine precondition violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pizza/coxeter.hpp"
#include "pizza/formulas.hpp"
#include "pizza/integrate.hpp"
#include "pizza/json_writer.hpp"
#include "pizza/restriction.hpp"
#include "pizza/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

pizza::Vec parse_vec(const std::string& s) {
  pizza::Vec v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.empty()) throw CLI::ValidationError("--center", "empty vector");
  return v;
}

std::vector<double> parse_radii(const std::string& s, const std::string& scale) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {std::stod(parts[0])};
  if (parts.size() != 3)
    throw CLI::ValidationError("--radii", "expected start:stop:steps");
  double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
  int steps = std::stoi(parts[2]);
  if (steps < 2 || lo <= 0 || hi <= lo)
    throw CLI::ValidationError("--radii", "need 0 < start < stop, steps >= 2");
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) {
    double t = static_cast<double>(i) / (steps - 1);
    out.push_back(scale == "geometric" ? lo * std::pow(hi / lo, t)
                                       : lo + (hi - lo) * t);
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << text;
  }
}

pizza::Arrangement load_arrangement(const std::string& type,
                                    const std::string& in_path) {
  if (!type.empty()) return pizza::build_type(type).base;
  if (!in_path.empty()) return pizza::read_arrangement_file(in_path);
  throw CLI::ValidationError("arr", "need --type or --in");
}

int default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alternating chamber-volume computations for oriented central "
               "hyperplane arrangements"};
  app.require_subcommand(1);

  std::string type, in_path, out_path;
  std::uint64_t seed = 42;
  long long samples = 4000000;
  int workers = default_workers();
  double quad_tol = 1e-8;

  // ---- arr ----------------------------------------------------------------
  auto* arr = app.add_subcommand("arr", "build / inspect / restrict arrangements");
  arr->require_subcommand(1);
  auto add_arr_common = [&](CLI::App* c) {
    c->add_option("--type", type, "Coxeter spec, e.g. B3, I2(6), A2xE1");
    c->add_option("--in", in_path, "arrangement text file");
    c->add_option("--out", out_path, "output path (default stdout)");
  };
  auto* arr_build = arr->add_subcommand("build", "construct and write an arrangement");
  add_arr_common(arr_build);
  auto* arr_info = arr->add_subcommand("info", "summary of an arrangement");
  add_arr_common(arr_info);
  int root_index = 0;
  auto* arr_restrict =
      arr->add_subcommand("restrict", "even restricted arrangement at one hyperplane");
  add_arr_common(arr_restrict);
  arr_restrict->add_option("--root-index", root_index, "hyperplane index")
      ->required();

  // ---- compute ------------------------------------------------------------
  std::string center_str = "0", method = "mc";
  double radius = 1.0;
  auto* compute = app.add_subcommand("compute", "alternating volume of a ball");
  compute->add_option("--type", type)->required();
  compute->add_option("--center", center_str, "comma-separated coordinates")
      ->required();
  compute->add_option("--radius", radius)->required();
  compute->add_option("--method", method, "mc | formula | exact2d")
      ->check(CLI::IsMember({"mc", "formula", "exact2d"}));
  compute->add_option("--samples", samples);
  compute->add_option("--quad-tol", quad_tol);
  compute->add_option("--seed", seed);
  compute->add_option("--workers", workers);
  compute->add_option("--out", out_path);

  // ---- verify ---------------------------------------------------------
  std::string suite;
  int sharing_k = 6, sharing_p = 0, conjecture_dim = 2, trials = 36;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify
      ->add_option("suite", suite,
                   "vanishing | reduction | suffsym | surface | sharing | "
                   "classification | conjecture | rindep | decay | oracle2d | "
                   "determinism | all")
      ->required();
  verify->add_option("--seed", seed);
  verify->add_option("--samples", samples);
  verify->add_option("--workers", workers);
  verify->add_option("--k", sharing_k, "dihedral k for the sharing suite");
  verify->add_option("--p", sharing_p, "people count (0 = every divisor)");
  verify->add_option("--dim", conjecture_dim, "conjecture probe dimension");
  verify->add_option("--trials", trials, "conjecture probe trials");
  verify->add_option("--out", out_path);
  bool text_format = false;
  verify->add_flag("--text", text_format, "plain-text table instead of JSON");

  // ---- sweep ----------------------------------------------------------
  std::string radii_str, scale = "linear";
  auto* sweep = app.add_subcommand("sweep", "value over a range of radii (CSV)");
  sweep->add_option("--type", type)->required();
  sweep->add_option("--center", center_str)->required();
  sweep->add_option("--radii", radii_str, "R or start:stop:steps")->required();
  sweep->add_option("--scale", scale)->check(CLI::IsMember({"linear", "geometric"}));
  sweep->add_option("--method", method)
      ->check(CLI::IsMember({"mc", "formula", "exact2d"}));
  sweep->add_option("--samples", samples);
  sweep->add_option("--seed", seed);
  sweep->add_option("--workers", workers);
  sweep->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (arr_build->parsed()) {
      pizza::Arrangement a = load_arrangement(type, in_path);
      std::ostringstream os;
      pizza::write_arrangement(os, a);
      emit(os.str(), out_path);
      return 0;
    }

    if (arr_info->parsed()) {
      pizza::Arrangement a = load_arrangement(type, in_path);
      pizza::JsonWriter w;
      w.begin_object();
      w.key("command");
      w.value("arr info");
      w.key("version");
      w.value(kVersion);
      w.key("dim");
      w.value(a.dim);
      w.key("hyperplanes");
      w.value(a.size());
      w.key("parity_condition");
      w.value(pizza::parity_condition(a));
      w.key("components");
      w.value(static_cast<long long>(pizza::irreducible_components(a).size()));
      if (a.dim <= 4) {
        w.key("is_even");
        w.value(pizza::is_even_arrangement(a));
      }
      if (!type.empty()) {
        pizza::CoxeterArrangement ca = pizza::build_type(type);
        if (ca.base.size() > 0 && static_cast<int>(ca.simple_indices.size()) ==
                                      ca.rank()) {
          w.key("minus_id");
          w.value(pizza::minus_id_in_group(ca));
        }
      }
      w.end_object();
      emit(w.str(), out_path);
      return 0;
    }

    if (arr_restrict->parsed()) {
      pizza::Arrangement a = load_arrangement(type, in_path);
      if (root_index < 0 || root_index >= a.size()) {
        std::cerr << "error: --root-index out of range\n";
        return 2;
      }
      pizza::RestrictionStep step =
          pizza::even_restricted(a, root_index, a.witness);
      std::ostringstream os;
      os << "# even restriction of "
         << (type.empty() ? in_path : type) << " at hyperplane " << root_index
         << "\n";
      os << "# z0_sign " << step.z0_sign << "\n";
      for (std::size_t c = 0; c < step.classes.size(); ++c) {
        os << "# class " << c << " from hyperplanes";
        for (int f : step.classes[c]) os << " " << f;
        os << "\n";
      }
      pizza::write_arrangement(os, step.child);
      emit(os.str(), out_path);
      return 0;
    }

    if (compute->parsed() || sweep->parsed()) {
      pizza::CoxeterArrangement ca = pizza::build_type(type);
      pizza::Vec center = parse_vec(center_str);
      if (static_cast<int>(center.size()) != ca.rank()) {
        std::cerr << "error: center has dimension " << center.size()
                  << ", arrangement lives in dimension " << ca.rank() << "\n";
        return 2;
      }
      pizza::QuadratureConfig cfg;
      cfg.rel_tol = quad_tol;
      std::vector<double> radii =
          compute->parsed() ? std::vector<double>{radius}
                            : parse_radii(radii_str, scale);

      std::vector<double> values, errors;
      std::vector<long long> ns;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        try {
          if (method == "mc") {
            pizza::MCEstimate est = pizza::pizza_mc(
                ca.base, pizza::region_ball(center, radii[i]), samples,
                pizza::mix_seed(seed, i), workers);
            values.push_back(est.value);
            errors.push_back(est.stderr_);
            ns.push_back(est.n_samples);
          } else if (method == "formula") {
            values.push_back(pizza::pizza_ball_coxeter(ca, center, radii[i], cfg));
            errors.push_back(0.0);
            ns.push_back(0);
          } else {
            values.push_back(pizza::pizza_exact_2d(ca.base, center, radii[i], cfg));
            errors.push_back(0.0);
            ns.push_back(0);
          }
        } catch (const std::invalid_argument& e) {
          std::cerr << "error: engine precondition: " << e.what() << "\n";
          return 3;
        }
      }

      if (compute->parsed()) {
        pizza::JsonWriter w;
        w.begin_object();
        w.key("command");
        w.value("compute");
        w.key("version");
        w.value(kVersion);
        w.key("method");
        w.value(method);
        w.key("value");
        w.value(values[0]);
        if (method == "mc") {
          w.key("stderr");
          w.value(errors[0]);
          w.key("n_samples");
          w.value(ns[0]);
        }
        w.key("seed");
        w.value(seed);
        w.key("config");
        w.begin_object();
        w.key("type");
        w.value(ca.spec.str());
        w.key("center");
        w.value(center_str);
        w.key("radius");
        w.value(radii[0]);
        w.key("samples");
        w.value(static_cast<long long>(samples));
        w.key("quad_tol");
        w.value(quad_tol);
        w.end_object();
        w.end_object();
        emit(w.str(), out_path);
      } else {
        std::ostringstream os;
        char buf[96];
        os << "R,value,stderr\n";
        for (std::size_t i = 0; i < radii.size(); ++i) {
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", radii[i],
                        values[i], errors[i]);
          os << buf;
        }
        emit(os.str(), out_path);
      }
      return 0;
    }

    if (verify->parsed()) {
      pizza::VerifyOptions opt;
      opt.seed = seed;
      opt.samples = samples;
      opt.workers = workers;
      opt.sharing_k = sharing_k;
      opt.sharing_p = sharing_p;
      opt.conjecture_dim = conjecture_dim;
      opt.conjecture_trials = trials;
      opt.quad.rel_tol = quad_tol;

      using SuiteFn = pizza::SuiteReport (*)(const pizza::VerifyOptions&);
      const std::vector<std::pair<std::string, SuiteFn>> all = {
          {"classification", pizza::suite_classification},
          {"vanishing", pizza::suite_vanishing},
          {"reduction", pizza::suite_reduction},
          {"suffsym", pizza::suite_sufficiently_symmetric},
          {"surface", pizza::suite_surface},
          {"sharing", pizza::suite_sharing},
          {"conjecture", pizza::probe_conjecture},
          {"rindep", pizza::suite_r_independence},
          {"decay", pizza::suite_decay},
          {"oracle2d", pizza::suite_oracle_2d},
          {"determinism", pizza::suite_determinism},
      };
      bool found = false, ok = true;
      std::string output;
      for (const auto& [name, fn] : all) {
        if (suite != "all" && suite != name) continue;
        found = true;
        pizza::SuiteReport rep = fn(opt);
        ok = ok && rep.all_pass();
        output += text_format ? pizza::report_text(rep)
                              : pizza::report_json(rep) + "\n";
      }
      if (!found) {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return 2;
      }
      emit(output, out_path);
      return ok ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
