#include "lindop.h"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lindop/casebook.hpp"
#include "lindop/error.hpp"
#include "lindop/formal.hpp"
#include "lindop/frank.hpp"
#include "lindop/operator.hpp"
#include "lindop/parse.hpp"
#include "lindop/poly.hpp"
#include "lindop/ray.hpp"
#include "lindop/tower.hpp"

using nlohmann::ordered_json;

struct lindop_ctx {
  lindop::TowerContext ctx;
};

struct lindop_value {
  lindop::Value v;
};

namespace {

thread_local int g_code = 0;
thread_local std::string g_msg;

void clear_error() {
  g_code = 0;
  g_msg.clear();
}

template <class T, class F>
T guard(T fail_value, F&& fn) {
  clear_error();
  try {
    return fn();
  } catch (const lindop::Error& e) {
    g_code = static_cast<int>(e.code());
    g_msg = e.what();
  } catch (const std::exception& e) {
    g_code = LINDOP_ERR_INTERNAL;
    g_msg = e.what();
  }
  return fail_value;
}

char* dup_str(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

[[noreturn]] void require(const char* what) {
  lindop::fail(lindop::ErrorCode::bad_arg,
               std::string(what) + " must not be null");
}

const lindop::TowerContext& ctx_of(const lindop_ctx* ctx) {
  if (!ctx) require("context");
  return ctx->ctx;
}

std::string str_of(const char* s, const char* what) {
  if (!s) require(what);
  return s;
}

lindop::Value eval_str(const lindop::TowerContext& ctx, const char* text,
                       const char* what = "expression") {
  std::vector<std::string> names = ctx.names();
  return lindop::evaluate(
      lindop::parse_expr(str_of(text, what), &names), ctx);
}

lindop::LinOp as_op(const lindop::Value& v) {
  return v.is_op ? v.op : lindop::LinOp::of_elem(v.elem);
}

lindop_value* wrap(lindop::Value v) {
  return new lindop_value{std::move(v)};
}

const lindop::Value& val_of(const lindop_value* v, const char* what) {
  if (!v) require(what);
  return v->v;
}

std::string value_render(const lindop::Value& v) {
  return v.is_op ? v.op.str() : v.elem.str();
}

// ----------------------------------------------------------------------
// Shared command bodies (string -> string), used by the render entry points.

std::vector<lindop::Value> eval_list(const lindop::TowerContext& ctx,
                                     const char* const* exprs, size_t n) {
  if (!exprs && n > 0) require("expression list");
  std::vector<lindop::Value> out;
  out.reserve(n);
  for (size_t j = 0; j < n; ++j)
    out.push_back(eval_str(ctx, exprs[j]));
  return out;
}

lindop::LinOp compose_all(const lindop::TowerContext& ctx,
                          const char* const* exprs, size_t n) {
  if (n < 1)
    lindop::fail(lindop::ErrorCode::bad_arg, "need at least one operator");
  std::vector<lindop::Value> vs = eval_list(ctx, exprs, n);
  lindop::LinOp acc = as_op(vs[0]);
  for (size_t j = 1; j < vs.size(); ++j) acc = acc * as_op(vs[j]);
  return acc;
}

std::string one_field(const std::string& key, const std::string& s,
                      bool as_text) {
  if (as_text) return s;
  ordered_json j;
  j[key] = s;
  return j.dump(2);
}

long parts_ram(const std::vector<lindop::ExpPart>& parts) {
  long r = 1;
  for (const auto& p : parts) r = std::lcm(r, p.q.ram());
  return r;
}

std::vector<lindop::ExpPart> parts_of(const lindop::TowerContext& ctx,
                                      const char* expr, int with_theta,
                                      double theta) {
  lindop::RatOp rop =
      lindop::RatOp::from_linop(as_op(eval_str(ctx, expr, "operator")));
  std::vector<lindop::ExpPart> parts = lindop::exponential_parts(rop);
  if (with_theta) {
    lindop::Angle a = lindop::Angle::from_radians(theta);
    std::stable_sort(parts.begin(), parts.end(),
                     [&](const lindop::ExpPart& x, const lindop::ExpPart& y) {
                       return lindop::ray_compare(x.q, y.q, a) ==
                              lindop::RayOrder::succeeds;
                     });
  }
  return parts;
}

// ----------------------------------------------------------------------
// verify argument handling

using ArgMap = std::map<std::string, std::string>;

long int_arg(const ArgMap& args, const std::string& key, long fallback) {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  try {
    size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  lindop::fail(lindop::ErrorCode::bad_arg,
               "argument '" + key + "' must be an integer, got '" +
                   it->second + "'");
}

lindop::Poly poly_arg(const ArgMap& args, const std::string& key,
                      const lindop::Poly& fallback) {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  lindop::TowerContext base;
  lindop::Value v = eval_str(base, it->second.c_str(), key.c_str());
  if (v.is_op)
    lindop::fail(lindop::ErrorCode::bad_arg,
                 "argument '" + key + "' must be a polynomial");
  lindop::RatFun f = v.elem.to_ratfun();
  if (!f.is_poly())
    lindop::fail(lindop::ErrorCode::bad_arg,
                 "argument '" + key + "' must be a polynomial");
  return f.num();
}

void reject_unknown(const ArgMap& args, const std::string& scenario,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : args) {
    bool ok = false;
    for (const char* a : allowed)
      if (k == a) ok = true;
    if (!ok)
      lindop::fail(lindop::ErrorCode::bad_arg,
                   "unknown argument '" + k + "' for scenario '" + scenario +
                       "'");
  }
}

} // namespace

// ----------------------------------------------------------------------
// Error reporting

extern "C" int lindop_errno(void) { return g_code; }

extern "C" const char* lindop_error_message(void) { return g_msg.c_str(); }

extern "C" void lindop_string_free(char* s) { std::free(s); }

// ----------------------------------------------------------------------
// Contexts and values

extern "C" lindop_ctx* lindop_ctx_new(void) {
  return guard<lindop_ctx*>(nullptr, [] { return new lindop_ctx{}; });
}

extern "C" lindop_ctx* lindop_ctx_from_config(const char* config_text) {
  return guard<lindop_ctx*>(nullptr, [&] {
    return new lindop_ctx{
        lindop::parse_tower_config(str_of(config_text, "config"))};
  });
}

extern "C" void lindop_ctx_free(lindop_ctx* ctx) { delete ctx; }

extern "C" lindop_value* lindop_eval(const lindop_ctx* ctx, const char* text) {
  return guard<lindop_value*>(nullptr, [&] {
    return wrap(eval_str(ctx_of(ctx), text));
  });
}

extern "C" void lindop_value_free(lindop_value* v) { delete v; }

extern "C" int lindop_value_is_operator(const lindop_value* v) {
  return guard<int>(0, [&] { return val_of(v, "value").is_op ? 1 : 0; });
}

extern "C" char* lindop_value_str(const lindop_value* v) {
  return guard<char*>(nullptr, [&] {
    return dup_str(value_render(val_of(v, "value")));
  });
}

// ----------------------------------------------------------------------
// Operator algebra on handles

extern "C" lindop_value* lindop_compose(const lindop_value* a,
                                        const lindop_value* b) {
  return guard<lindop_value*>(nullptr, [&] {
    return wrap(lindop::Value::of(as_op(val_of(a, "left operand")) *
                                  as_op(val_of(b, "right operand"))));
  });
}

extern "C" int lindop_rdivide(const lindop_value* a, const lindop_value* b,
                              lindop_value** q, lindop_value** r) {
  if (q) *q = nullptr;
  if (r) *r = nullptr;
  int rc = guard<int>(-1, [&] {
    if (!q || !r) require("result slot");
    lindop::LinOp qq, rr;
    lindop::LinOp::divrem(as_op(val_of(a, "dividend")),
                          as_op(val_of(b, "divisor")), qq, rr);
    *q = wrap(lindop::Value::of(std::move(qq)));
    *r = wrap(lindop::Value::of(std::move(rr)));
    return 0;
  });
  return rc == 0 ? 0 : g_code;
}

extern "C" lindop_value* lindop_gcrd(const lindop_value* a,
                                     const lindop_value* b) {
  return guard<lindop_value*>(nullptr, [&] {
    return wrap(lindop::Value::of(lindop::LinOp::gcrd(
        as_op(val_of(a, "left operand")), as_op(val_of(b, "right operand")))));
  });
}

extern "C" int lindop_gauge(const lindop_value* a, lindop_value** reduced,
                            lindop_value** w) {
  if (reduced) *reduced = nullptr;
  if (w) *w = nullptr;
  int rc = guard<int>(-1, [&] {
    if (!reduced || !w) require("result slot");
    auto [n, lw] = as_op(val_of(a, "operator")).gauge_normalize();
    *reduced = wrap(lindop::Value::of(std::move(n)));
    *w = wrap(lindop::Value::of(std::move(lw)));
    return 0;
  });
  return rc == 0 ? 0 : g_code;
}

extern "C" lindop_value* lindop_changevar(const lindop_value* a, long n) {
  return guard<lindop_value*>(nullptr, [&] {
    return wrap(
        lindop::Value::of(as_op(val_of(a, "operator")).change_variables(n)));
  });
}

extern "C" lindop_value* lindop_wronskian(const lindop_value* const* elems,
                                          size_t n) {
  return guard<lindop_value*>(nullptr, [&] {
    if (!elems || n == 0) require("element list");
    std::vector<lindop::TowerElem> es;
    es.reserve(n);
    for (size_t j = 0; j < n; ++j) {
      const lindop::Value& v = val_of(elems[j], "element");
      if (v.is_op)
        lindop::fail(lindop::ErrorCode::bad_arg,
                     "wronskian expects field elements, not operators");
      es.push_back(v.elem);
    }
    return wrap(lindop::Value::of(lindop::wronskian(es)));
  });
}

// ----------------------------------------------------------------------
// Command-shaped renderers

extern "C" char* lindop_compose_render(const lindop_ctx* ctx,
                                       const char* const* exprs, size_t n,
                                       int as_text) {
  return guard<char*>(nullptr, [&] {
    lindop::LinOp acc = compose_all(ctx_of(ctx), exprs, n);
    return dup_str(one_field("op", acc.str(), as_text));
  });
}

extern "C" char* lindop_rdivide_render(const lindop_ctx* ctx, const char* a,
                                       const char* b, int as_text) {
  return guard<char*>(nullptr, [&] {
    const lindop::TowerContext& c = ctx_of(ctx);
    lindop::LinOp q, r;
    lindop::LinOp::divrem(as_op(eval_str(c, a, "dividend")),
                          as_op(eval_str(c, b, "divisor")), q, r);
    if (as_text) return dup_str("q: " + q.str() + "\nr: " + r.str());
    ordered_json j;
    j["q"] = q.str();
    j["r"] = r.str();
    return dup_str(j.dump(2));
  });
}

extern "C" char* lindop_gcrd_render(const lindop_ctx* ctx,
                                    const char* const* exprs, size_t n,
                                    int as_text) {
  return guard<char*>(nullptr, [&] {
    const lindop::TowerContext& c = ctx_of(ctx);
    if (n < 1)
      lindop::fail(lindop::ErrorCode::bad_arg, "need at least one operator");
    std::vector<lindop::Value> vs = eval_list(c, exprs, n);
    lindop::LinOp acc = as_op(vs[0]);
    for (size_t j = 1; j < vs.size(); ++j)
      acc = lindop::LinOp::gcrd(acc, as_op(vs[j]));
    return dup_str(one_field("gcrd", acc.str(), as_text));
  });
}

extern "C" char* lindop_gauge_render(const lindop_ctx* ctx, const char* a,
                                     int as_text) {
  return guard<char*>(nullptr, [&] {
    auto [n, w] =
        as_op(eval_str(ctx_of(ctx), a, "operator")).gauge_normalize();
    if (as_text) return dup_str("op: " + n.str() + "\nw: " + w.str());
    ordered_json j;
    j["op"] = n.str();
    j["w"] = w.str();
    return dup_str(j.dump(2));
  });
}

extern "C" char* lindop_changevar_render(const lindop_ctx* ctx, const char* a,
                                         long n, int as_text) {
  return guard<char*>(nullptr, [&] {
    lindop::LinOp out =
        as_op(eval_str(ctx_of(ctx), a, "operator")).change_variables(n);
    return dup_str(one_field("op", out.str(), as_text));
  });
}

extern "C" char* lindop_wronskian_render(const lindop_ctx* ctx,
                                         const char* const* exprs, size_t n,
                                         int as_text) {
  return guard<char*>(nullptr, [&] {
    const lindop::TowerContext& c = ctx_of(ctx);
    if (n < 1)
      lindop::fail(lindop::ErrorCode::bad_arg, "need at least one element");
    std::vector<lindop::Value> vs = eval_list(c, exprs, n);
    std::vector<lindop::TowerElem> es;
    es.reserve(vs.size());
    for (const auto& v : vs) {
      if (v.is_op)
        lindop::fail(lindop::ErrorCode::bad_arg,
                     "wronskian expects field elements, not operators");
      es.push_back(v.elem);
    }
    lindop::TowerElem w = lindop::wronskian(es);
    return dup_str(one_field("wronskian", w.str(), as_text));
  });
}

extern "C" char* lindop_exp_parts_render(const lindop_ctx* ctx,
                                         const char* expr, int with_theta,
                                         double theta, int as_text) {
  return guard<char*>(nullptr, [&] {
    std::vector<lindop::ExpPart> parts =
        parts_of(ctx_of(ctx), expr, with_theta, theta);
    long ram = parts_ram(parts);
    if (as_text) {
      std::string out = "ram " + std::to_string(ram);
      for (const auto& p : parts) {
        out += "\n" + p.q.str();
        if (p.mult > 1) out += " (mult " + std::to_string(p.mult) + ")";
        if (p.approximate) out += " (approx)";
      }
      return dup_str(out);
    }
    ordered_json j;
    j["parts"] = ordered_json::array();
    for (const auto& p : parts) {
      ordered_json e;
      e["poly"] = p.q.str();
      if (p.mult > 1) e["mult"] = p.mult;
      if (p.approximate) e["approx"] = true;
      j["parts"].push_back(e);
    }
    j["ram"] = ram;
    if (with_theta) j["theta"] = theta;
    return dup_str(j.dump(2));
  });
}

extern "C" char* lindop_formal_solve_render(const lindop_ctx* ctx,
                                            const char* expr, long trunc,
                                            int as_text) {
  return guard<char*>(nullptr, [&] {
    lindop::RatOp rop = lindop::RatOp::from_linop(
        as_op(eval_str(ctx_of(ctx), expr, "operator")));
    std::vector<lindop::ExpPart> parts = lindop::exponential_parts(rop);
    long ram = parts_ram(parts);
    struct Entry {
      std::string q, gamma, series, error;
    };
    std::vector<Entry> entries;
    for (const auto& p : parts) {
      Entry e;
      e.q = p.q.str();
      if (p.approximate) {
        e.error = "part is only known approximately";
      } else if (p.mult > 1) {
        e.error = "part has multiplicity " + std::to_string(p.mult);
      } else {
        try {
          lindop::FormalSol s = lindop::formal_solution(rop, p.q, trunc);
          e.gamma = s.gamma.str();
          e.series = lindop::series_str(s.series);
        } catch (const lindop::Error& err) {
          e.error = err.what();
        }
      }
      entries.push_back(std::move(e));
    }
    if (as_text) {
      std::string out = "ram " + std::to_string(ram);
      for (const auto& e : entries) {
        out += "\nq: " + e.q;
        if (e.error.empty()) {
          out += "\n  gamma: " + e.gamma + "\n  series: " + e.series;
        } else {
          out += "\n  error: " + e.error;
        }
      }
      return dup_str(out);
    }
    ordered_json j;
    j["solutions"] = ordered_json::array();
    for (const auto& e : entries) {
      ordered_json s;
      s["q"] = e.q;
      if (e.error.empty()) {
        s["gamma"] = e.gamma;
        s["series"] = e.series;
      } else {
        s["error"] = e.error;
      }
      j["solutions"].push_back(s);
    }
    j["ram"] = ram;
    return dup_str(j.dump(2));
  });
}

namespace {

lindop::FrankSystem frank_system(const lindop::TowerContext& ctx, int k,
                                 const char* const* c, const char* const* C) {
  if (k < 3)
    lindop::fail(lindop::ErrorCode::bad_arg, "order must be at least 3");
  if (!c || !C) require("coefficient list");
  auto list = [&](const char* const* xs, const char* what) {
    std::vector<lindop::TowerElem> out;
    out.reserve(static_cast<size_t>(k - 1));
    for (int j = 0; j <= k - 2; ++j) {
      lindop::Value v = eval_str(ctx, xs[j], what);
      if (v.is_op)
        lindop::fail(lindop::ErrorCode::bad_arg,
                     std::string(what) + " entries must be field elements");
      out.push_back(v.elem);
    }
    return out;
  };
  return lindop::FrankSystem(ctx.tower, list(c, "c"), list(C, "C"));
}

} // namespace

extern "C" char* lindop_frank_gen_render(const lindop_ctx* ctx, int k,
                                         const char* const* c,
                                         const char* const* C, int as_text) {
  return guard<char*>(nullptr, [&] {
    lindop::FrankSystem sys = frank_system(ctx_of(ctx), k, c, C);
    auto rels = sys.relations();
    if (as_text) {
      std::string out = "k " + std::to_string(k);
      for (int mu = 0; mu < static_cast<int>(rels.size()); ++mu)
        out += "\nmu " + std::to_string(mu) + ": (" + rels[mu].first.str() +
               ")[Phi] = (" + rels[mu].second.str() + ")[G]";
      return dup_str(out);
    }
    ordered_json j;
    j["k"] = k;
    j["relations"] = ordered_json::array();
    for (int mu = 0; mu < static_cast<int>(rels.size()); ++mu) {
      ordered_json r;
      r["mu"] = mu;
      r["phi_side"] = rels[mu].first.str();
      r["g_side"] = rels[mu].second.str();
      j["relations"].push_back(r);
    }
    return dup_str(j.dump(2));
  });
}

extern "C" char* lindop_frank_check_render(const lindop_ctx* ctx, int k,
                                           const char* const* c,
                                           const char* const* C, const char* g,
                                           const char* phi, int as_text,
                                           int* failed) {
  if (failed) *failed = 0;
  return guard<char*>(nullptr, [&] {
    const lindop::TowerContext& cc = ctx_of(ctx);
    lindop::FrankSystem sys = frank_system(cc, k, c, C);
    lindop::Value gv = eval_str(cc, g, "g");
    lindop::Value pv = eval_str(cc, phi, "phi");
    if (gv.is_op || pv.is_op)
      lindop::fail(lindop::ErrorCode::bad_arg,
                   "g and phi must be field elements");
    auto rels = sys.relations();
    std::vector<bool> ok(rels.size());
    bool all = true;
    for (size_t mu = 0; mu < rels.size(); ++mu) {
      lindop::TowerElem res =
          rels[mu].first.apply(pv.elem) - rels[mu].second.apply(gv.elem);
      ok[mu] = res.is_zero();
      all = all && ok[mu];
    }
    if (failed) *failed = all ? 0 : 1;
    if (as_text) {
      std::string out;
      for (size_t mu = 0; mu < ok.size(); ++mu)
        out += "mu " + std::to_string(mu) + ": " +
               (ok[mu] ? "ok" : "FAIL") + "\n";
      out += all ? "ok" : "FAIL";
      return dup_str(out);
    }
    ordered_json j;
    j["k"] = k;
    j["relations"] = ordered_json::array();
    for (size_t mu = 0; mu < ok.size(); ++mu) {
      ordered_json r;
      r["mu"] = mu;
      r["ok"] = static_cast<bool>(ok[mu]);
      j["relations"].push_back(r);
    }
    j["ok"] = all;
    return dup_str(j.dump(2));
  });
}

// ----------------------------------------------------------------------
// Verification scenarios

extern "C" char* lindop_verify(const char* scenario, const char* const* keys,
                               const char* const* values, size_t nargs,
                               unsigned long seed, int as_text, int* failed) {
  if (failed) *failed = 0;
  return guard<char*>(nullptr, [&] {
    std::string name = str_of(scenario, "scenario");
    if (nargs > 0 && (!keys || !values)) require("argument list");
    ArgMap args;
    for (size_t j = 0; j < nargs; ++j) {
      std::string k = str_of(keys[j], "argument key");
      if (!args.emplace(k, str_of(values[j], "argument value")).second)
        lindop::fail(lindop::ErrorCode::bad_arg,
                     "duplicate argument '" + k + "'");
    }
    lindop::Poly z = lindop::Poly::z();
    lindop::Report rep;
    if (name == "example1") {
      reject_unknown(args, name, {"delta", "k", "m"});
      rep = lindop::verify_example1(poly_arg(args, "delta", z),
                                    static_cast<int>(int_arg(args, "k", 3)),
                                    int_arg(args, "m", 2));
    } else if (name == "example2") {
      reject_unknown(args, name, {"P"});
      rep = lindop::verify_example2(poly_arg(args, "P", z));
    } else if (name == "example3") {
      reject_unknown(args, name, {"m", "P1"});
      rep = lindop::verify_example3(int_arg(args, "m", 2),
                                    poly_arg(args, "P1", z * z));
    } else if (name == "theorem-reps") {
      reject_unknown(args, name, {"k", "delta", "m"});
      rep = lindop::verify_theorem_reps(
          static_cast<int>(int_arg(args, "k", 3)),
          poly_arg(args, "delta", z), int_arg(args, "m", 2));
    } else if (name == "frank-chain") {
      reject_unknown(args, name, {});
      rep = lindop::verify_frank_chain(seed);
    } else if (name == "elimination-chain") {
      reject_unknown(args, name, {});
      rep = lindop::verify_elimination_chain(seed);
    } else {
      lindop::fail(lindop::ErrorCode::bad_arg,
                   "unknown scenario: " + name);
    }
    rep.seed = seed;
    if (failed) *failed = rep.ok() ? 0 : 1;
    return dup_str(as_text ? lindop::report_text(rep)
                           : lindop::report_json(rep));
  });
}

extern "C" char* lindop_report(unsigned long seed, const char* filter,
                               int parallel, int as_text, int* failed) {
  if (failed) *failed = 0;
  return guard<char*>(nullptr, [&] {
    lindop::RunConfig cfg;
    cfg.seed = seed;
    cfg.filter = filter ? filter : "";
    cfg.parallel = parallel != 0;
    lindop::RunResult run = lindop::run_all(cfg);
    if (failed) *failed = run.ok() ? 0 : 1;
    return dup_str(as_text ? lindop::run_text(run) : lindop::run_json(run));
  });
}
