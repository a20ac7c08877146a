#include "frobmor/report.hpp"

#include "frobmor/duality.hpp"

#include <chrono>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frobmor {

void SessionConfig::validate() const {
    if (!fp::is_prime(p)) throw error("config: p must be prime");
    if (n < 2) throw error("config: n must be at least 2");
    if (l < 0) throw error("config: l must be nonnegative");
    if (trials < 1) throw error("config: trials must be positive");
    if (max_dim < 1) throw error("config: max_dim must be positive");
}

json Report::to_json(bool with_timing) const {
    json jchecks = json::array();
    for (const auto& c : checks) {
        json fails = json::array();
        for (const auto& f : c.failures) fails.push_back(f);
        jchecks.push_back(json{{"name", c.name},
                               {"params", c.params},
                               {"trials", c.trials},
                               {"skipped", c.skipped},
                               {"failures", std::move(fails)}});
    }
    json out{{"schema", "frobmor/1"},
             {"suite", suite},
             {"config", json{{"p", cfg.p},
                             {"n", cfg.n},
                             {"l", cfg.l},
                             {"seed", cfg.seed},
                             {"trials", cfg.trials},
                             {"max_dim", cfg.max_dim}}},
             {"passed", passed()},
             {"checks", std::move(jchecks)}};
    if (with_timing) out["wall_ms"] = wall_ms;
    return out;
}

namespace {

std::uint64_t stream_id(const std::string& name, int trial) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : name) {
        h ^= (unsigned char)c;
        h *= 1099511628211ull;
    }
    return h * 0x9e3779b97f4a7c15ull + (std::uint64_t)trial;
}

// Runs one body per trial, in parallel, collecting failures in trial
// order. The body receives a per-trial deterministic generator and fills
// the payload on failure through exceptions or explicit json.
struct TrialRunner {
    const SessionConfig& cfg;
    // The body fills ctx with the serialized inputs it draws, so a failure
    // payload carries a counterexample alongside the replaying (seed, trial).
    CheckResult run(const std::string& name, json params,
                    const std::function<void(Gen&, int, json&)>& body, int count = -1) const {
        CheckResult res;
        res.name = name;
        res.params = std::move(params);
        res.trials = count < 0 ? cfg.trials : count;
        std::vector<json> fails(res.trials);
        std::vector<char> failed(res.trials, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < res.trials; ++i) {
            Gen g(cfg.seed, stream_id(name, i));
            json ctx = json::object();
            try {
                body(g, i, ctx);
            } catch (const std::exception& e) {
                failed[i] = 1;
                fails[i] = json{{"trial", i},
                                {"seed", cfg.seed},
                                {"error", e.what()},
                                {"counterexample", std::move(ctx)}};
            }
        }
        for (int i = 0; i < res.trials; ++i)
            if (failed[i]) res.failures.push_back(std::move(fails[i]));
        return res;
    }

    CheckResult skipped(const std::string& name, json params, const std::string& why) const {
        CheckResult res;
        res.name = name;
        res.params = std::move(params);
        res.params["skipped_because"] = why;
        res.trials = 0;
        res.skipped = 1;
        return res;
    }
};

void require(bool cond, const std::string& what) {
    if (!cond) throw error(what);
}

// ---- exactness -----------------------------------------------------------------

Report suite_exactness(const SessionConfig& cfg) {
    Report rep;
    rep.suite = "exactness";
    rep.cfg = cfg;
    TrialRunner tr{cfg};
    GenConfig gc = cfg.gen();
    const int l = cfg.l;

    rep.checks.push_back(tr.run("envelope-cover-ses", {{"l", l}}, [&](Gen& g, int, json& ctx) {
        ChainObject x = random_chain(g, gc, l);
        ctx["x"] = to_json(x);
        auto env = chain_injective_envelope(x);
        env.ses.validate();
        require(is_injective_chain(env.hull), "hull not injective");
        auto cov = chain_projective_cover(x);
        cov.ses.validate();
        require(is_projective_chain(cov.cover), "cover not projective");
    }));

    rep.checks.push_back(tr.run("base-hull-cover-ses", json::object(), [&](Gen& g, int, json&) {
        LambdaModule m = random_module(g, gc);
        suspend(m).ses.validate();
        loop(m).ses.validate();
        auto jd = jordan_type(m);
        require(jd.basis * jd.canonical.action == m.action * jd.basis, "jordan witness");
    }));

    rep.checks.push_back(tr.run("pushout-pullback-certificates", {{"l", l}}, [&](Gen& g, int, json& ctx) {
        ChainObject x = random_chain(g, gc, l);
        ChainObject y = random_chain(g, gc, l);
        ctx["x"] = to_json(x);
        ctx["y"] = to_json(y);
        auto env = chain_injective_envelope(x);
        ChainMap f = random_chain_map(g, x, y);
        ctx["f"] = to_json(f);
        auto po = chain_pushout(env.embed, f);
        po.cert.validate();
        require(compose(po.from_B, env.embed) == compose(po.from_C, f), "pushout square");
        auto cov = chain_projective_cover(y);
        auto pb = chain_pullback(cov.project, random_chain_map(g, x, y));
        pb.cert.validate();
    }));

    rep.checks.push_back(tr.run("noether-completion", json::object(), [&](Gen& g, int, json&) {
        // grid from an intersection of two random submodules
        LambdaModule b = random_module(g, gc, false);
        auto pick_mono = [&]() -> ModuleMap {
            for (int t = 0; t < 60; ++t) {
                auto s = random_module(g, GenConfig{gc.p, gc.n, std::min(4, b.dim)});
                auto f = random_hom(g, s, b);
                if (f.is_mono()) return f;
            }
            return ModuleMap::zero(LambdaModule::zero(gc.n, gc.p), b);
        };
        ModuleMap ma = pick_mono(), mbp = pick_mono();
        Matrix K = kernel_basis(Matrix::hstack(ma.mat, -mbp.mat));
        auto sum = direct_sum(ma.src, mbp.src);
        auto act = solve_all(K, sum.action * K);
        LambdaModule ap((int)K.cols(), gc.n, act->particular);
        ModuleMap incl(ap, sum, K);
        ModuleMap ap_to_a = compose(projection_first(ma.src, mbp.src), incl);
        ModuleMap ap_to_bp = compose(projection_second(ma.src, mbp.src), incl);
        auto row1q = quotient_module(ap_to_bp);
        auto row2q = quotient_module(ma);
        auto col1q = quotient_module(ap_to_a);
        auto col2q = quotient_module(mbp);
        ModuleMap a2b2 = solve_through_epi(col1q.projection, compose(col2q.projection, ma));
        auto row3q = quotient_module(a2b2);
        NoetherGrid grid;
        grid.row1 = ShortExactSeq(ap_to_bp, row1q.projection);
        grid.row2 = ShortExactSeq(ma, row2q.projection);
        grid.row3 = ShortExactSeq(a2b2, row3q.projection);
        grid.col1 = ShortExactSeq(ap_to_a, col1q.projection);
        grid.col2 = ShortExactSeq(mbp, col2q.projection);
        auto col3 = noether_complete(grid);
        col3.validate();
        require(compose(col3.mono, grid.row1.epi) == compose(grid.row2.epi, grid.col2.mono),
                "noether upper square");
        require(compose(col3.epi, grid.row2.epi) == compose(grid.row3.epi, grid.col2.epi),
                "noether lower square");
    }));

    rep.checks.push_back(tr.run("ses-direct-sums", {{"l", l}}, [&](Gen& g, int, json&) {
        auto s1 = chain_injective_envelope(random_chain(g, gc, l)).ses;
        auto s2 = chain_injective_envelope(random_chain(g, gc, l)).ses;
        ChainSES sum(direct_sum_map(s1.mono, s2.mono), direct_sum_map(s1.epi, s2.epi));
        sum.validate();
    }));

    return rep;
}

// ---- sod -----------------------------------------------------------------------

Report suite_sod(const SessionConfig& cfg) {
    Report rep;
    rep.suite = "sod";
    rep.cfg = cfg;
    TrialRunner tr{cfg};
    GenConfig gc = cfg.gen();
    const int l = cfg.l;

    rep.checks.push_back(tr.run("functor-identities", {{"l", l}}, [&](Gen& g, int, json&) {
        ChainObject x = random_chain(g, gc, l);
        ChainObject y = random_chain(g, gc, l);
        ChainMap f = random_chain_map(g, x, y);
        for (int s = 0; s <= l; ++s) {
            require(delta(x, {s, s}) == x, "delta^{[s,s]} != id");
            for (int t = s; t < l; ++t) {
                require(gamma(delta(x, {s, t + 1}), {s, t}) == x, "gamma delta != id (objects)");
                require(gamma_map(delta_map(f, {s, t + 1}), {s, t}) == f,
                        "gamma delta != id (morphisms)");
            }
            for (int t = s + 1; t <= l; ++t) {
                require(gamma(delta(x, {s, t}), {s + 1, t}) == x, "gamma delta != id (objects)");
                require(gamma_map(delta_map(f, {s, t}), {s + 1, t}) == f,
                        "gamma delta != id (morphisms)");
            }
        }
        for (int s = 0; s <= l; ++s)
            for (int t = s; t <= l; ++t) {
                auto inner = gamma_complement(x, {s, t});
                require(gamma_complement(delta_complement(inner, {s, t}, l), {s, t}) == inner,
                        "gamma_c delta_c != id");
            }
    }));

    if (l == 0) {
        rep.checks.push_back(tr.skipped("semiorthogonality", {{"l", l}}, "no valid indices"));
        rep.checks.push_back(tr.skipped("sod-triangles", {{"l", l}}, "no valid indices"));
        rep.checks.push_back(tr.skipped("reversed-hom-anti-test", {{"l", l}}, "needs l >= 1"));
        return rep;
    }

    rep.checks.push_back(tr.run("semiorthogonality", {{"l", l}}, [&](Gen& g, int, json&) {
        for (int s = 0; s < l; ++s) {
            auto u = random_gamma_object(g, gc, l, s + 1, l);
            auto v = random_gamma_object(g, gc, l, 0, s);
            require(stable_hom(u, v).stable_dim() == 0, "Hom(Gamma,Gamma) != 0");
        }
        for (int s = 0; s <= l; ++s)
            for (int t = s; t < l; ++t) {
                auto u = random_gamma_object(g, gc, l, s, t);
                auto v = random_delta_object(g, gc, l, s, t + 1);
                require(stable_hom(u, v).stable_dim() == 0, "Hom(Gamma,Delta) != 0");
            }
        for (int s = 1; s <= l; ++s)
            for (int t = s; t <= l; ++t) {
                auto u = random_delta_object(g, gc, l, s - 1, t);
                auto v = random_gamma_object(g, gc, l, s, t);
                require(stable_hom(u, v).stable_dim() == 0, "Hom(Delta,Gamma) != 0");
            }
    }));

    rep.checks.push_back(tr.run("sod-triangles", {{"l", l}}, [&](Gen& g, int, json& ctx) {
        ChainObject x = random_chain(g, gc, l);
        ctx["x"] = to_json(x);
        for (int s = 0; s < l; ++s)
            verify_sod_triangle(sod_triangle(x, {SodCase::GammaGamma, s, 0}), x,
                                {SodCase::GammaGamma, s, 0});
        for (int s = 0; s <= l; ++s)
            for (int t = s; t < l; ++t)
                verify_sod_triangle(sod_triangle(x, {SodCase::GammaDelta, s, t}), x,
                                    {SodCase::GammaDelta, s, t});
        for (int s = 1; s <= l; ++s)
            for (int t = s; t <= l; ++t)
                verify_sod_triangle(sod_triangle(x, {SodCase::DeltaGamma, s, t}), x,
                                    {SodCase::DeltaGamma, s, t});
    }));

    rep.checks.push_back(tr.run("sos-triangles-cross-check", {{"l", l}}, [&](Gen& g, int, json&) {
        ChainObject x = random_chain(g, gc, l);
        for (int s = 0; s < l; ++s) {
            auto a = sod_triangle(x, {SodCase::GammaGamma, s, 0});
            auto b = sos_triangle(x, {SodCase::GammaGamma, s, 0});
            verify_sod_triangle(b, x, {SodCase::GammaGamma, s, 0});
            auto fills = unique_fill_in(a, b, ChainMap::identity(x));
            require(is_stable_iso(fills.right), "sos/sod comparison not a stable iso");
        }
        for (int s = 0; s <= l; ++s)
            for (int t = s; t < l; ++t) {
                auto b = sos_triangle(x, {SodCase::GammaDelta, s, t});
                verify_sod_triangle(b, x, {SodCase::GammaDelta, s, t});
            }
    }));

    rep.checks.push_back(tr.run(
        "reversed-hom-anti-test", {{"l", l}},
        [&](Gen&, int, json&) {
            // pinned nonzero reversed-order stable hom:
            // constant k against (k >--> Lambda = ... = Lambda)
            auto k = LambdaModule::jordan(1, gc.n, gc.p);
            ChainObject right = ChainObject::constant(l, k);          // in Delta
            ChainObject left = delta_complement(ChainObject({k}, {}), {0, 0}, l); // in Gamma
            require(stable_hom(right, left).stable_dim() > 0,
                    "expected a nonzero reversed-order stable hom");
        },
        1));

    return rep;
}

// ---- polygon ---------------------------------------------------------------------

SodCase classify_edge(const PolygonTag& a, const PolygonTag& b, int l) {
    if (a.is_gamma && !b.is_gamma) return {SodCase::GammaDelta, a.s, a.t};
    if (!a.is_gamma && b.is_gamma) return {SodCase::DeltaGamma, b.s, b.t};
    // gamma-gamma junction: (Gamma^{[s+1,l]}, Gamma^{[0,s]})
    require(a.t == l && a.s >= 1 && b.s == 0 && b.t == a.s - 1, "unrecognized polygon edge");
    return {SodCase::GammaGamma, b.t, 0};
}

Report suite_polygon(const SessionConfig& cfg) {
    Report rep;
    rep.suite = "polygon";
    rep.cfg = cfg;
    TrialRunner tr{cfg};
    GenConfig gc = cfg.gen();
    const int l = cfg.l;
    if (l < 1) {
        rep.checks.push_back(tr.skipped("polygon", {{"l", l}}, "needs l >= 1"));
        return rep;
    }

    for (int s = 0; s < l; ++s) {
        auto tags = polygon_tags(l, s);
        json params{{"l", l}, {"s", s}, {"gon", (int)tags.size()},
                    {"reduced", polygon_is_reduced(l, s)}};

        rep.checks.push_back(
            tr.run("polygon-edges-s" + std::to_string(s), params, [&, tags](Gen& g, int, json&) {
                ChainObject x = random_chain(g, gc, l);
                for (std::size_t e = 0; e < tags.size(); ++e) {
                    SodCase c = classify_edge(tags[e], tags[(e + 1) % tags.size()], l);
                    verify_sod_triangle(sod_triangle(x, c), x, c);
                    // semiorthogonality sample for this edge
                    ChainObject u =
                        c.kind == SodCase::GammaGamma
                            ? random_gamma_object(g, gc, l, c.s + 1, l)
                            : (c.kind == SodCase::GammaDelta
                                   ? random_gamma_object(g, gc, l, c.s, c.t)
                                   : random_delta_object(g, gc, l, c.s - 1, c.t));
                    ChainObject v =
                        c.kind == SodCase::GammaGamma
                            ? random_gamma_object(g, gc, l, 0, c.s)
                            : (c.kind == SodCase::GammaDelta
                                   ? random_delta_object(g, gc, l, c.s, c.t + 1)
                                   : random_gamma_object(g, gc, l, c.s, c.t));
                    require(stable_hom(u, v).stable_dim() == 0,
                            "polygon edge " + std::to_string(e) + " semiorthogonality");
                }
            }));

        rep.checks.push_back(
            tr.run("polygon-full-turn-s" + std::to_string(s), params, [&](Gen& g, int, json&) {
                ChainObject z = random_chain(g, gc, s);
                require(polygon_full_turn(z, l, s) == theta_pow(z, polygon_theta_exponent(l, s)),
                        "full turn differs from the predicted theta power");
            }));
    }
    return rep;
}

// ---- mutations -------------------------------------------------------------------

Report suite_mutations(const SessionConfig& cfg) {
    Report rep;
    rep.suite = "mutations";
    rep.cfg = cfg;
    TrialRunner tr{cfg};
    GenConfig gc = cfg.gen();
    const int l = cfg.l;
    if (l < 1) {
        rep.checks.push_back(tr.skipped("mutations", {{"l", l}}, "needs l >= 1"));
        return rep;
    }

    rep.checks.push_back(tr.run("case1-roundtrip", {{"l", l}}, [&](Gen& g, int, json&) {
        for (int s = 0; s < l; ++s)
            for (int t = s; t < l; ++t) {
                ChainObject x = random_gamma_object(g, gc, l, s, t);
                auto tri = sod_triangle(x, {SodCase::DeltaGamma, s + 1, t + 1});
                ChainObject lx = mutate_case1_left(x, s, t);
                require(tri.right == lx, "grid L differs from the triangle vertex");
                auto tri2 = sod_triangle(lx, {SodCase::GammaDelta, s, t});
                require(tri2.left == mutate_case1_right(lx, s, t),
                        "grid R differs from the triangle vertex");
                auto back = stable_factor_through(tri2.f_left, tri.f_right);
                require(back.has_value() && back->unique, "roundtrip factorization failed");
                require(is_stable_iso(back->map), "R L not stably the identity");
            }
    }));

    rep.checks.push_back(tr.run("case2-4-roundtrips", {{"l", l}}, [&](Gen& g, int, json&) {
        // case 2 edges Delta^{[s,t]} <--> Delta^{[s+1,t+1]} need t + 1 <= l
        for (int s = 0; s < l; ++s)
            for (int t = s + 1; t + 1 <= l; ++t) {
                ChainObject x = random_delta_object(g, gc, l, s, t);
                auto lx = mutate(x, {MutationEdge::Case2, true, s, t});
                require(mutate(lx, {MutationEdge::Case2, false, s, t}) == x, "case 2 roundtrip");
            }
        for (int s = 0; s + 1 <= l; ++s) {
            ChainObject x3 = random_delta_object(g, gc, l, s, l);
            auto lx3 = mutate(x3, {MutationEdge::Case3, true, s, 0});
            require(mutate(lx3, {MutationEdge::Case3, false, s, 0}) == x3, "case 3 roundtrip");
        }
        for (int s = 1; s <= l; ++s) {
            ChainObject x4 = random_gamma_object(g, gc, l, s, l);
            auto lx4 = mutate(x4, {MutationEdge::Case4, true, s, 0});
            require(mutate(lx4, {MutationEdge::Case4, false, s, 0}) == x4, "case 4 roundtrip");
        }
    }));

    rep.checks.push_back(tr.run("case1-theta-agreement", {{"l", l}}, [&](Gen& g, int, json&) {
        for (int s = 0; s < l; ++s)
            for (int t = s; t < l; ++t) {
                ChainObject z = random_chain(g, gc, t - s);
                ChainObject x = delta_complement(z, {s, t}, l);
                ChainObject lx = mutate_case1_left(x, s, t);
                require(gamma_complement(lx, {s + 1, t + 1}) == theta(z),
                        "conjugated case 1 differs from theta");
            }
    }));

    rep.checks.push_back(tr.run("theta-roundtrips", {{"l", l}}, [&](Gen& g, int, json&) {
        ChainObject x = random_chain(g, gc, l);
        require(is_stable_iso(theta_roundtrip_unit(x)), "theta unit not a stable iso");
        require(is_stable_iso(theta_roundtrip_counit(x)), "theta counit not a stable iso");
    }));

    return rep;
}

// ---- theta-sigma -----------------------------------------------------------------

Report suite_theta_sigma(const SessionConfig& cfg) {
    Report rep;
    rep.suite = "theta-sigma";
    rep.cfg = cfg;
    TrialRunner tr{cfg};
    GenConfig gc = cfg.gen();
    const int l = cfg.l;

    rep.checks.push_back(tr.run("keystone-witness", {{"l", l}}, [&](Gen& g, int, json& ctx) {
        ChainObject x = random_chain(g, gc, l);
        ctx["x"] = to_json(x);
        auto w = theta_sigma_witness(x);
        w.first.validate();
        w.second.validate();
    }));

    rep.checks.push_back(tr.run("tilde-theta-relation", {{"l", l}}, [&](Gen& g, int, json&) {
        ChainObject x = random_chain(g, gc, l);
        ChainObject tt = tilde_theta(x);
        ChainObject tg = theta(x);
        int hull_dim = injective_hull(x.terms[0]).tgt.dim;
        for (int k = 0; k <= l; ++k)
            require(tt.terms[k].dim == tg.terms[k].dim + hull_dim, "tilde theta dims");
        require(is_stable_iso(tilde_to_theta(x)), "tilde theta comparison");
    }));

    if (cfg.n == 2 && l == 1) {
        rep.checks.push_back(tr.run(
            "pinned-kk-instance", json::object(),
            [&](Gen&, int, json&) {
                auto k = LambdaModule::jordan(1, 2, gc.p);
                ChainObject kk = ChainObject::constant(1, k);
                auto w = theta_sigma_witness(kk);
                w.first.validate();
                w.second.validate();
                // Theta^3 (k=k) is stably (k=k) again
                ChainObject t3 = theta_pow(kk, 3);
                bool found = false;
                for (auto& h : chain_hom_basis(t3, kk))
                    if (is_stable_iso(h)) found = true;
                require(found, "Theta^3(k=k) not stably (k=k)");
                // and Sigma^2(k=k) is stably (k=k)
                ChainObject s2 = sigma_chain(sigma_chain(kk).object).object;
                found = false;
                for (auto& h : chain_hom_basis(s2, kk))
                    if (is_stable_iso(h)) found = true;
                require(found, "Sigma^2(k=k) not stably (k=k)");
            },
            1));
    }
    return rep;
}

// ---- adjoints -------------------------------------------------------------------

// sigma : Hom(L A, B) --> Hom(A, R B) for the non-mutated pairs, built from
// the unit/counit maps of the decomposition triangles.
ChainMap adjoint_transpose(const AdjointPair& pr, int l, const ChainObject& a,
                           const ChainObject& b, const ChainMap& phi) {
    switch (pr.kind) {
    case AdjointPair::GammaThenDelta: {
        ChainMap eta = sod_triangle(a, {SodCase::GammaDelta, pr.s, pr.t - 1}).f_right;
        return compose(delta_map(phi, {pr.s, pr.t}), eta);
    }
    case AdjointPair::DeltaThenGamma:
        return gamma_map(phi, {pr.s + 1, pr.t});
    case AdjointPair::GammaThenDeltaC: {
        ChainMap eta = sos_triangle(a, {SodCase::GammaGamma, pr.t - 1, 0}).f_right;
        return compose(delta_complement_map(phi, {0, pr.t - 1}, l), eta);
    }
    case AdjointPair::DeltaCThenGamma:
        return gamma_map(phi, {0, pr.s});
    case AdjointPair::HatThenDeltaC: {
        if (pr.s == 0 && pr.t == l) return phi; // hat is the identity there
        ChainMap eta = (pr.s > 0)
                           ? sos_triangle(a, {SodCase::DeltaGamma, pr.s, pr.t}).f_right
                           : sos_triangle(a, {SodCase::GammaGamma, pr.t, 0}).f_right;
        return compose(delta_complement_map(phi, {pr.s, pr.t}, l), eta);
    }
    default:
        throw error("adjoint_transpose: unsupported pair");
    }
    (void)b;
}

// reverse transpose for the (delta_c, check) pair: psi : A --> check(B)
// maps to eps_B . delta_c(psi) : delta_c(A) --> B, with the counit read off
// the decomposition triangle of B.
ChainMap adjoint_transpose_back(const AdjointPair& pr, int l, const ChainObject& b,
                                const ChainMap& psi) {
    require(pr.kind == AdjointPair::DeltaCThenCheck, "only for delta_c -| check");
    ChainMap eps = sos_triangle(b, {SodCase::GammaDelta, pr.s, pr.t}).f_left;
    return compose(eps, delta_complement_map(psi, {pr.s, pr.t}, l));
}

Report suite_adjoints(const SessionConfig& cfg) {
    Report rep;
    rep.suite = "adjoints";
    rep.cfg = cfg;
    TrialRunner tr{cfg};
    GenConfig gc = cfg.gen();
    const int l = cfg.l;

    auto window = adjoint_window(l);
    if (window.empty()) {
        rep.checks.push_back(tr.skipped("adjoint-window", {{"l", l}}, "window empty"));
        return rep;
    }

    rep.checks.push_back(tr.run("dimension-equalities", {{"l", l}, {"pairs", (int)window.size()}},
                                [&](Gen& g, int, json&) {
                                    for (const auto& pr : window) {
                                        ChainObject a =
                                            random_chain(g, gc, adjoint_src_length(pr, l));
                                        ChainObject b =
                                            random_chain(g, gc, adjoint_tgt_length(pr, l));
                                        ChainObject la = adjoint_left_on(pr, a, l);
                                        ChainObject rb = adjoint_right_on(pr, b, l);
                                        require(stable_hom(la, b).stable_dim() ==
                                                    stable_hom(a, rb).stable_dim(),
                                                "adjoint dimension equality (kind " +
                                                    std::to_string((int)pr.kind) + " s=" +
                                                    std::to_string(pr.s) + " t=" +
                                                    std::to_string(pr.t) + ")");
                                    }
                                }));

    // spot checks: a handful of trials regardless of the main trial count
    int spot = std::min(cfg.trials, 3);
    rep.checks.push_back(tr.run("naturality-spot-checks", {{"l", l}}, [&](Gen& g, int, json&) {
        for (const auto& pr : window) {
            if (pr.kind == AdjointPair::MutHat || pr.kind == AdjointPair::CheckMut)
                continue; // dimension-only for the mutated pairs
            ChainObject a = random_chain(g, gc, adjoint_src_length(pr, l));
            ChainObject b = random_chain(g, gc, adjoint_tgt_length(pr, l));
            ChainObject la = adjoint_left_on(pr, a, l);
            ChainObject rb = adjoint_right_on(pr, b, l);
            StableHomSpace lhs = stable_hom(la, b);
            StableHomSpace rhs = stable_hom(a, rb);

            if (pr.kind == AdjointPair::DeltaCThenCheck) {
                // bijectivity of the reverse transpose
                if (rhs.stable_dim() == 0) continue;
                Matrix mat(lhs.stable_dim(), rhs.stable_dim(), gc.p);
                for (int j = 0; j < rhs.stable_dim(); ++j) {
                    ChainMap img = adjoint_transpose_back(pr, l, b, rhs.stable_basis[j]);
                    Matrix col = lhs.class_coords(img);
                    for (int i = 0; i < lhs.stable_dim(); ++i) mat.at(i, j) = col.at(i, 0);
                }
                require(mat.rank() == rhs.stable_dim(), "reverse transpose not bijective");
                continue;
            }

            if (lhs.stable_dim() == 0) continue;
            Matrix mat(rhs.stable_dim(), lhs.stable_dim(), gc.p);
            std::vector<ChainMap> images;
            for (int j = 0; j < lhs.stable_dim(); ++j) {
                ChainMap img = adjoint_transpose(pr, l, a, b, lhs.stable_basis[j]);
                images.push_back(img);
                Matrix col = rhs.class_coords(img);
                for (int i = 0; i < rhs.stable_dim(); ++i) mat.at(i, j) = col.at(i, 0);
            }
            require(mat.rank() == lhs.stable_dim(), "transpose not bijective");

            // one pre- and one post-composition naturality sample
            const ChainMap& phi = lhs.stable_basis[0];
            ChainMap rho = random_chain_map(g, b, b);
            ChainMap lhs_post = adjoint_transpose(pr, l, a, b, compose(rho, phi));
            ChainMap rho_r =
                pr.kind == AdjointPair::GammaThenDelta  ? delta_map(rho, {pr.s, pr.t})
                : pr.kind == AdjointPair::DeltaThenGamma ? gamma_map(rho, {pr.s + 1, pr.t})
                : pr.kind == AdjointPair::GammaThenDeltaC
                    ? delta_complement_map(rho, {0, pr.t - 1}, l)
                : pr.kind == AdjointPair::DeltaCThenGamma ? gamma_map(rho, {0, pr.s})
                                                          : delta_complement_map(
                                                                rho, {pr.s, pr.t}, l);
            require(stably_equal(lhs_post, compose(rho_r, adjoint_transpose(pr, l, a, b, phi))),
                    "naturality (post-composition)");
        }
    }, spot));

    return rep;
}

// ---- duality ---------------------------------------------------------------------

Report suite_duality(const SessionConfig& cfg) {
    Report rep;
    rep.suite = "duality";
    rep.cfg = cfg;
    TrialRunner tr{cfg};
    GenConfig gc = cfg.gen();
    const int l = cfg.l;

    rep.checks.push_back(tr.run("base-duality-data", json::object(), [&](Gen& g, int, json&) {
        LambdaModule a = random_module(g, gc);
        DualityDatum d = base_duality_datum(a);
        for (int j = 1; j <= (int)gc.n; ++j)
            require(pairing_perfect_against(d, LambdaModule::jordan(j, gc.n, gc.p)),
                    "pairing not perfect against an indecomposable");
    }));

    rep.checks.push_back(tr.run("rep-comp-functoriality", json::object(), [&](Gen& g, int, json&) {
        LambdaModule a = random_module(g, gc, false);
        LambdaModule b = random_module(g, gc, false);
        LambdaModule c = random_module(g, gc, false);
        auto dA = base_duality_datum(a);
        auto dB = base_duality_datum(b);
        auto dC = base_duality_datum(c);
        ModuleMap f = random_hom(g, a, b);
        ModuleMap gmap = random_hom(g, b, c);
        ModuleMap ft = induced_dual_morphism(f, dA, dB);
        ModuleMap gt = induced_dual_morphism(gmap, dB, dC);
        ModuleMap gft = induced_dual_morphism(compose(gmap, f), dA, dC);
        require(is_stably_zero_map(gft - compose(gt, ft)), "rep-comp compositions");
    }));

    rep.checks.push_back(tr.run("representability", {{"l", l}, {"samples", 10}}, [&](Gen& g, int, json& ctx) {
        ChainObject x = random_chain(g, gc, l);
        ctx["x"] = to_json(x);
        RepGrid grid = build_quotient_grid(x);
        build_dual_grid(grid);
        ChainDualityDatum d = bk_functional(x, grid);
        for (int i = 0; i < 10; ++i) {
            ChainObject y = random_chain(g, gc, l);
            std::string why;
            require(verify_representing_against(d, y, &why), "representability: " + why);
        }
    }));

    if (cfg.n == 2 && l == 1) {
        rep.checks.push_back(tr.run(
            "pinned-kk-representing", json::object(),
            [&](Gen&, int, json&) {
                auto k = LambdaModule::jordan(1, 2, gc.p);
                ChainObject kk = ChainObject::constant(1, k);
                RepGrid grid = build_quotient_grid(kk);
                build_dual_grid(grid);
                auto ik = injective_hull(k);
                ChainObject kl({ik.src, ik.tgt}, {ik});
                bool found = false;
                for (auto& h : chain_hom_basis(grid.rep, kl))
                    if (is_stable_iso(h)) found = true;
                require(found, "representing object of (k=k) not stably (k >--> Lambda)");
                ChainDualityDatum d = bk_functional(kk, grid);
                StableHomSpace paired = stable_hom(kk, grid.rep);
                require(paired.stable_dim() == 1, "expected a 1-dim pairing space");
                require(d.evaluate(paired.stable_basis[0]) != 0 ||
                            d.evaluate(scale(paired.stable_basis[0], 1)) != 0,
                        "1x1 pairing vanished");
                std::string why;
                require(verify_representing_against(d, kk, &why), "pinned pairing: " + why);
            },
            1));
    }

    return rep;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"exactness", "sod", "polygon", "mutations", "theta-sigma", "adjoints", "duality"};
}

Report run_suite(const std::string& name, const SessionConfig& cfg) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    if (name == "exactness")
        rep = suite_exactness(cfg);
    else if (name == "sod")
        rep = suite_sod(cfg);
    else if (name == "polygon")
        rep = suite_polygon(cfg);
    else if (name == "mutations")
        rep = suite_mutations(cfg);
    else if (name == "theta-sigma")
        rep = suite_theta_sigma(cfg);
    else if (name == "adjoints")
        rep = suite_adjoints(cfg);
    else if (name == "duality")
        rep = suite_duality(cfg);
    else
        throw error("unknown suite: " + name);
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

} // namespace frobmor
