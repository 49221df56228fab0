// Command-line front end; all work goes through the C API in lindop.h.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lindop.h"

namespace {

// Usage and parse problems exit 2; failed verdicts and runtime errors exit 1.
int api_exit_code() {
  int e = lindop_errno();
  return (e == LINDOP_ERR_PARSE || e == LINDOP_ERR_BAD_ARG) ? 2 : 1;
}

[[noreturn]] void die_api() {
  std::fprintf(stderr, "error: %s\n", lindop_error_message());
  std::exit(api_exit_code());
}

[[noreturn]] void finish(char* out, int failed) {
  if (!out) die_api();
  std::puts(out);
  lindop_string_free(out);
  std::exit(failed ? 1 : 0);
}

struct CtxGuard {
  lindop_ctx* p = nullptr;
  ~CtxGuard() { lindop_ctx_free(p); }
};

lindop_ctx* make_ctx(CtxGuard& guard, const std::string& tower_file) {
  if (tower_file.empty()) {
    guard.p = lindop_ctx_new();
  } else {
    std::ifstream f(tower_file);
    if (!f) {
      std::fprintf(stderr, "error: cannot open tower file '%s'\n",
                   tower_file.c_str());
      std::exit(2);
    }
    std::ostringstream text;
    text << f.rdbuf();
    guard.p = lindop_ctx_from_config(text.str().c_str());
  }
  if (!guard.p) die_api();
  return guard.p;
}

std::vector<const char*> c_strs(const std::vector<std::string>& xs) {
  std::vector<const char*> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.c_str());
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for linear differential operators"};
  app.require_subcommand(1);

  struct {
    std::string format = "json";
    std::string tower;
    std::vector<std::string> exprs;
    std::string a, b, g, phi, scenario, filter;
    std::vector<std::string> c_list, C_list;
    double theta = 0.0;
    long trunc = 8;
    long n = 1;
    int k = 3;
    unsigned long seed = 1;
    bool serial = false;
    std::string delta, P, P1, karg, marg;
  } o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto add_tower = [&](CLI::App* sub) {
    sub->add_option("--tower", o.tower,
                    "file with generator declarations");
  };
  auto as_text = [&] { return o.format == "text" ? 1 : 0; };

  auto* exp_parts = app.add_subcommand(
      "exp-parts", "exponential parts of an operator at infinity");
  exp_parts->add_option("expr", o.a, "operator expression")->required();
  auto* theta_opt = exp_parts->add_option(
      "--theta", o.theta, "order parts along the ray arg z = theta");
  add_tower(exp_parts);
  add_format(exp_parts);
  exp_parts->callback([&] {
    CtxGuard ctx;
    finish(lindop_exp_parts_render(make_ctx(ctx, o.tower), o.a.c_str(),
                                   theta_opt->count() > 0 ? 1 : 0, o.theta,
                                   as_text()),
           0);
  });

  auto* formal = app.add_subcommand(
      "formal-solve", "formal solutions attached to the exponential parts");
  formal->add_option("expr", o.a, "operator expression")->required();
  formal->add_option("--trunc", o.trunc, "series coefficients to compute");
  add_tower(formal);
  add_format(formal);
  formal->callback([&] {
    CtxGuard ctx;
    finish(lindop_formal_solve_render(make_ctx(ctx, o.tower), o.a.c_str(),
                                      o.trunc, as_text()),
           0);
  });

  auto* wronsk = app.add_subcommand(
      "wronskian", "Wronskian determinant of field elements");
  wronsk->add_option("exprs", o.exprs, "element expressions")
      ->required()
      ->expected(-1);
  add_tower(wronsk);
  add_format(wronsk);
  wronsk->callback([&] {
    CtxGuard ctx;
    auto ptrs = c_strs(o.exprs);
    finish(lindop_wronskian_render(make_ctx(ctx, o.tower), ptrs.data(),
                                   ptrs.size(), as_text()),
           0);
  });

  auto* compose = app.add_subcommand("compose", "compose operators");
  compose->add_option("exprs", o.exprs, "operator expressions")
      ->required()
      ->expected(-2);
  add_tower(compose);
  add_format(compose);
  compose->callback([&] {
    CtxGuard ctx;
    auto ptrs = c_strs(o.exprs);
    finish(lindop_compose_render(make_ctx(ctx, o.tower), ptrs.data(),
                                 ptrs.size(), as_text()),
           0);
  });

  auto* rdivide = app.add_subcommand(
      "rdivide", "right division a = q*b + r");
  rdivide->add_option("a", o.a, "dividend")->required();
  rdivide->add_option("b", o.b, "divisor")->required();
  add_tower(rdivide);
  add_format(rdivide);
  rdivide->callback([&] {
    CtxGuard ctx;
    finish(lindop_rdivide_render(make_ctx(ctx, o.tower), o.a.c_str(),
                                 o.b.c_str(), as_text()),
           0);
  });

  auto* gcrd = app.add_subcommand(
      "gcrd", "greatest common right divisor");
  gcrd->add_option("exprs", o.exprs, "operator expressions")
      ->required()
      ->expected(-2);
  add_tower(gcrd);
  add_format(gcrd);
  gcrd->callback([&] {
    CtxGuard ctx;
    auto ptrs = c_strs(o.exprs);
    finish(lindop_gcrd_render(make_ctx(ctx, o.tower), ptrs.data(),
                              ptrs.size(), as_text()),
           0);
  });

  auto* gauge = app.add_subcommand(
      "gauge", "kill the subleading coefficient of a monic operator");
  gauge->add_option("expr", o.a, "operator expression")->required();
  add_tower(gauge);
  add_format(gauge);
  gauge->callback([&] {
    CtxGuard ctx;
    finish(lindop_gauge_render(make_ctx(ctx, o.tower), o.a.c_str(),
                               as_text()),
           0);
  });

  auto* changevar = app.add_subcommand(
      "changevar", "transport an operator through z -> z^n");
  changevar->add_option("expr", o.a, "operator expression")->required();
  changevar->add_option("n", o.n, "substitution exponent")->required();
  add_tower(changevar);
  add_format(changevar);
  changevar->callback([&] {
    CtxGuard ctx;
    finish(lindop_changevar_render(make_ctx(ctx, o.tower), o.a.c_str(), o.n,
                                   as_text()),
           0);
  });

  auto* fgen = app.add_subcommand(
      "frank-gen", "the k coupled relations for coefficient lists c, C");
  fgen->add_option("--k", o.k, "order of the pair of equations")->required();
  fgen->add_option("--c", o.c_list, "entries c_0..c_{k-2}");
  fgen->add_option("--C", o.C_list, "entries C_0..C_{k-2}");
  add_tower(fgen);
  add_format(fgen);
  fgen->callback([&] {
    if (o.c_list.size() + 1 != static_cast<size_t>(o.k) ||
        o.C_list.size() + 1 != static_cast<size_t>(o.k)) {
      std::fprintf(stderr, "error: --c and --C need exactly k-1 entries\n");
      std::exit(2);
    }
    CtxGuard ctx;
    auto cs = c_strs(o.c_list);
    auto Cs = c_strs(o.C_list);
    finish(lindop_frank_gen_render(make_ctx(ctx, o.tower), o.k, cs.data(),
                                   Cs.data(), as_text()),
           0);
  });

  auto* fcheck = app.add_subcommand(
      "frank-check", "check a pair (g, phi) against all k relations");
  fcheck->add_option("--k", o.k, "order of the pair of equations")->required();
  fcheck->add_option("--c", o.c_list, "entries c_0..c_{k-2}");
  fcheck->add_option("--C", o.C_list, "entries C_0..C_{k-2}");
  fcheck->add_option("--g", o.g, "candidate G")->required();
  fcheck->add_option("--phi", o.phi, "candidate Phi")->required();
  add_tower(fcheck);
  add_format(fcheck);
  fcheck->callback([&] {
    if (o.c_list.size() + 1 != static_cast<size_t>(o.k) ||
        o.C_list.size() + 1 != static_cast<size_t>(o.k)) {
      std::fprintf(stderr, "error: --c and --C need exactly k-1 entries\n");
      std::exit(2);
    }
    CtxGuard ctx;
    auto cs = c_strs(o.c_list);
    auto Cs = c_strs(o.C_list);
    int failed = 0;
    finish(lindop_frank_check_render(make_ctx(ctx, o.tower), o.k, cs.data(),
                                     Cs.data(), o.g.c_str(), o.phi.c_str(),
                                     as_text(), &failed),
           failed);
  });

  auto* verify = app.add_subcommand(
      "verify", "run one verification scenario");
  verify->add_option("scenario", o.scenario,
                     "example1|example2|example3|theorem-reps|frank-chain|"
                     "elimination-chain")
      ->required();
  auto* d_opt = verify->add_option("--delta", o.delta, "polynomial");
  auto* p_opt = verify->add_option("--P", o.P, "polynomial");
  auto* p1_opt = verify->add_option("--P1", o.P1, "polynomial");
  auto* k_opt = verify->add_option("--k", o.karg, "order");
  auto* m_opt = verify->add_option("--m", o.marg, "pole order");
  verify->add_option("--seed", o.seed, "seed for randomized scenarios");
  add_format(verify);
  verify->callback([&] {
    std::vector<std::string> keys, values;
    auto grab = [&](CLI::Option* opt, const char* key, const std::string& v) {
      if (opt->count() > 0) {
        keys.push_back(key);
        values.push_back(v);
      }
    };
    grab(d_opt, "delta", o.delta);
    grab(p_opt, "P", o.P);
    grab(p1_opt, "P1", o.P1);
    grab(k_opt, "k", o.karg);
    grab(m_opt, "m", o.marg);
    auto kp = c_strs(keys);
    auto vp = c_strs(values);
    int failed = 0;
    finish(lindop_verify(o.scenario.c_str(), kp.data(), vp.data(), kp.size(),
                         o.seed, as_text(), &failed),
           failed);
  });

  auto* report = app.add_subcommand(
      "report", "run every scenario and aggregate");
  report->add_option("--filter", o.filter, "run only the named scenario");
  report->add_option("--seed", o.seed, "seed for randomized scenarios");
  report->add_flag("--serial", o.serial, "disable scenario parallelism");
  add_format(report);
  report->callback([&] {
    int failed = 0;
    finish(lindop_report(o.seed, o.filter.empty() ? nullptr : o.filter.c_str(),
                         o.serial ? 0 : 1, as_text(), &failed),
           failed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return 0;
}
