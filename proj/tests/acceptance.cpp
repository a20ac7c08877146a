// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Configuration is the pinned default (p = 5, n in {2,3},
// l in {0..3}, max_dim = 6, 25 trials per check; 15 for the duality runs).

#include "frobmor/duality.hpp"
#include "frobmor/report.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <string>
#include <vector>

using namespace frobmor;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", number,
                what.c_str(), ms, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

SessionConfig config(u32 n, int l, int trials = 25) {
    SessionConfig cfg;
    cfg.p = 5;
    cfg.n = n;
    cfg.l = l;
    cfg.seed = 1;
    cfg.trials = trials;
    cfg.max_dim = 6;
    return cfg;
}

// several criteria read different checks of the same suite run; cache the
// reports per (suite, config)
Report& cached_report(const std::string& suite, const SessionConfig& cfg) {
    static std::deque<std::pair<std::string, Report>> cache; // stable references
    std::string key = suite + "/" + std::to_string(cfg.n) + "/" + std::to_string(cfg.l) + "/" +
                      std::to_string(cfg.trials);
    for (auto& [k, r] : cache)
        if (k == key) return r;
    cache.emplace_back(key, run_suite(suite, cfg));
    return cache.back().second;
}

bool run_and_collect(const std::string& suite, const SessionConfig& cfg, std::string& detail,
                     const std::vector<std::string>& only = {}) {
    const Report& rep = cached_report(suite, cfg);
    bool ok = true;
    for (const auto& c : rep.checks) {
        if (!only.empty()) {
            bool wanted = false;
            for (const auto& o : only)
                if (c.name.rfind(o, 0) == 0) wanted = true;
            if (!wanted) continue;
        }
        if (!c.passed()) {
            ok = false;
            detail += suite + "/" + c.name + " n=" + std::to_string(cfg.n) +
                      " l=" + std::to_string(cfg.l) + ": " + c.failures.front().dump() + "; ";
        }
    }
    return ok;
}

} // namespace

int main() {
    const std::vector<u32> ns{2, 3};
    auto t0 = std::chrono::steady_clock::now();

    criterion(1, "exact-structure suite (envelopes, covers, Noether, squares)",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 0; l <= 3; ++l)
                          ok = run_and_collect("exactness", config(n, l), d) && ok;
                  return ok;
              });

    criterion(2, "functor identities gamma.delta = id on objects and morphisms, l <= 3",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 0; l <= 3; ++l)
                          ok = run_and_collect("sod", config(n, l), d, {"functor-identities"}) &&
                               ok;
                  return ok;
              });

    criterion(3, "semiorthogonality of all named decompositions + reversed anti-test",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 1; l <= 3; ++l)
                          ok = run_and_collect("sod", config(n, l), d,
                                               {"semiorthogonality", "reversed-hom-anti-test"}) &&
                               ok;
                  return ok;
              });

    criterion(4, "SOD triangles with memberships and witnesses; middle row equals X",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 1; l <= 3; ++l)
                          ok = run_and_collect("sod", config(n, l), d,
                                               {"sod-triangles", "sos-triangles-cross-check"}) &&
                               ok;
                  return ok;
              });

    criterion(5, "keystone Theta^{l+2} X = Sigma^2 X stably, incl. the pinned (k=k) instance",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 0; l <= 3; ++l)
                          ok = run_and_collect("theta-sigma", config(n, l), d) && ok;
                  return ok;
              });

    criterion(6, "mutations: roundtrips, theta agreement, polygon walks at l <= 2",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 1; l <= 2; ++l) {
                          ok = run_and_collect("mutations", config(n, l), d) && ok;
                          ok = run_and_collect("polygon", config(n, l), d) && ok;
                      }
                  // the reduced (l+2)-gon for odd l is the l=1 polygon (s=0)
                  return ok;
              });

    criterion(7, "adjunction dimension equalities across the displayed window + naturality",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 1; l <= 3; ++l)
                          ok = run_and_collect("adjoints", config(n, l), d) && ok;
                  return ok;
              });

    criterion(8, "duality: dual grids, functionals, representability (pinned (k=k) included)",
              [&](std::string& d) {
                  bool ok = true;
                  for (u32 n : ns)
                      for (int l = 0; l <= 2; ++l)
                          ok = run_and_collect("duality", config(n, l, 15), d) && ok;
                  return ok;
              });

    criterion(9, "stable-hom dimensions agree with the brute-force oracle", [&](std::string& d) {
        bool ok = true;
        // all modules of dim <= 4 (canonical forms and one conjugate each)
        for (u32 n : ns) {
            // enumerate partitions with parts <= n, total <= 4
            std::vector<std::vector<int>> parts;
            std::function<void(std::vector<int>&, int, int)> rec =
                [&](std::vector<int>& acc, int remaining, int maxpart) {
                    parts.push_back(acc);
                    for (int p2 = std::min(remaining, std::min(maxpart, (int)n)); p2 >= 1; --p2) {
                        acc.push_back(p2);
                        rec(acc, remaining - p2, p2);
                        acc.pop_back();
                    }
                };
            std::vector<int> acc;
            rec(acc, 4, 4);
            Gen g(1, 900 + n);
            GenConfig gc{5, n, 4};
            std::vector<LambdaModule> mods;
            for (auto& t : parts) mods.push_back(LambdaModule::of_type(t, n, 5));
            mods.push_back(random_module(g, gc, false));
            for (auto& a : mods)
                for (auto& b : mods) {
                    if (stable_hom_basis(a, b).stable_dim() != oracle::stable_hom_dim(a, b)) {
                        ok = false;
                        d += "module oracle mismatch n=" + std::to_string(n) + "; ";
                    }
                }
        }
        // chains of total dim <= 8 (rejection-sampled, fixed seed)
        for (u32 n : ns) {
            Gen g(1, 1000 + n);
            GenConfig gc{5, n, 3};
            int done = 0;
            for (int tries = 0; tries < 400 && done < 25; ++tries) {
                int l = (int)g.below(4);
                ChainObject x = random_chain(g, gc, l);
                ChainObject y = random_chain(g, gc, l);
                if (x.total_dim() > 8 || y.total_dim() > 8) continue;
                ++done;
                if (stable_hom(x, y).stable_dim() != oracle::chain_stable_hom_dim(x, y)) {
                    ok = false;
                    d += "chain oracle mismatch n=" + std::to_string(n) +
                         " trial=" + std::to_string(done) + "; ";
                }
            }
            if (done < 25) {
                ok = false;
                d += "not enough small chains sampled; ";
            }
        }
        return ok;
    });

    criterion(10, "determinism: identical reports for identical (seed, config)",
              [&](std::string& d) {
                  bool ok = true;
                  for (const auto& name : suite_names()) {
                      SessionConfig cfg = config(2, 1, 5);
                      auto a = run_suite(name, cfg).to_json(false);
                      auto b = run_suite(name, cfg).to_json(false);
                      if (a != b) {
                          ok = false;
                          d += "suite " + name + " not deterministic; ";
                      }
                  }
                  return ok;
              });

    double total =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d criterion(s) failed; total %.1f s\n", failures, total / 1000.0);
    return failures == 0 ? 0 : 1;
}
