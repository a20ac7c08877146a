#include "doctest.h"

#include "frobmor/functors.hpp"
#include "test_util.hpp"

using namespace frobmor;
using testutil::Rng;
using testutil::random_chain;
using testutil::random_chain_map;

namespace {
constexpr u32 P = 5;
LambdaModule k_simple(u32 n) { return LambdaModule::jordan(1, n, P); }
ChainObject kk_chain(u32 n) { return ChainObject::constant(1, k_simple(n)); }
} // namespace

TEST_CASE("gamma/delta identities on objects and morphisms") {
    Rng rng{11};
    for (int iter = 0; iter < 8; ++iter) {
        int l = 1 + (int)rng.mod(3);
        auto x = random_chain(rng, l, 2, 4, P);
        auto y = random_chain(rng, l, 2, 4, P);
        auto f = random_chain_map(rng, x, y);
        // delta^{[s,s]} = id
        for (int s = 0; s <= l; ++s) CHECK(delta(x, {s, s}) == x);
        // gamma^{[s,t]} . delta^{[s,t+1]} = id for t < l
        for (int s = 0; s <= l; ++s)
            for (int t = s; t < l; ++t) {
                CHECK(gamma(delta(x, {s, t + 1}), {s, t}) == x);
                CHECK(gamma_map(delta_map(f, {s, t + 1}), {s, t}) == f);
            }
        // gamma^{[s+1,t]} . delta^{[s,t]} = id for s < t
        for (int s = 0; s <= l; ++s)
            for (int t = s + 1; t <= l; ++t) {
                CHECK(gamma(delta(x, {s, t}), {s + 1, t}) == x);
                CHECK(gamma_map(delta_map(f, {s, t}), {s + 1, t}) == f);
            }
        // commutation delta^t delta^s = delta^s delta^{t-1} for s < t
        for (int s = 0; s < l; ++s)
            for (int t = s + 1; t <= l; ++t)
                CHECK(delta(delta(x, {s, s + 1}), {t, t + 1}) ==
                      delta(delta(x, {t - 1, t}), {s, s + 1}));
    }
}

TEST_CASE("gamma and delta preserve SESs and projective chains") {
    Rng rng{13};
    for (int iter = 0; iter < 5; ++iter) {
        int l = 1 + (int)rng.mod(2);
        auto x = random_chain(rng, l, 2, 4, P);
        auto env = chain_injective_envelope(x);
        for (int s = 0; s <= l; ++s) {
            for (int t = s; t <= l; ++t) {
                if (!(s == 0 && t == l)) {
                    ChainSES g(gamma_map(env.ses.mono, {s, t}), gamma_map(env.ses.epi, {s, t}));
                    g.validate();
                    CHECK(is_projective_chain(gamma(env.hull, {s, t})));
                }
                ChainSES d(delta_map(env.ses.mono, {s, t}), delta_map(env.ses.epi, {s, t}));
                d.validate();
                CHECK(is_projective_chain(delta(env.hull, {s, t})));
            }
        }
    }
}

TEST_CASE("delta_complement") {
    u32 n = 2;
    // mu_1(k) with iv=[1,1], l=2 gives (0 >--> k >--> Lambda)
    auto zerolen = ChainObject({k_simple(n)}, {});
    auto d = delta_complement(zerolen, {1, 1}, 2);
    CHECK(d.terms[0].dim == 0);
    CHECK(d.terms[1].dim == 1);
    CHECK(d.terms[2].dim == 2);
    CHECK(is_projective(d.terms[2]));

    // full interval: unchanged
    Rng rng{17};
    for (int iter = 0; iter < 5; ++iter) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, 2, 4, P);
        CHECK(delta_complement(x, {0, l}, l) == x);
        // gamma_c . delta_c = id on objects and morphisms
        for (int s = 0; s <= l; ++s)
            for (int t = s; t <= l; ++t) {
                auto inner = gamma_complement(x, {s, t});
                CHECK(gamma_complement(delta_complement(inner, {s, t}, l), {s, t}) == inner);
            }
        auto y = random_chain(rng, l, 2, 4, P);
        auto f = random_chain_map(rng, x, y);
        auto big = delta_complement_map(f, {0, l}, l);
        CHECK(big == f);
    }
    // stable functoriality of delta_complement on morphisms
    for (int iter = 0; iter < 4; ++iter) {
        auto a = random_chain(rng, 1, 2, 4, P);
        auto b = random_chain(rng, 1, 2, 4, P);
        auto c = random_chain(rng, 1, 2, 4, P);
        auto f = random_chain_map(rng, a, b);
        auto g = random_chain_map(rng, b, c);
        Interval iv{1, 2};
        int l = 3;
        auto lhs = delta_complement_map(compose(g, f), iv, l);
        auto rhs = compose(delta_complement_map(g, iv, l), delta_complement_map(f, iv, l));
        CHECK(stably_equal(lhs, rhs));
        CHECK(stably_equal(delta_complement_map(ChainMap::identity(a), iv, l),
                           ChainMap::identity(delta_complement(a, iv, l))));
    }
}

TEST_CASE("hat and check gamma") {
    u32 n = 2;
    auto ik = injective_hull(k_simple(n));
    ChainObject kl({ik.src, ik.tgt}, {ik}); // (k >--> Lambda)
    // hat over [1,1]: Lambda/k = k
    auto h = hat_gamma_c(kl, {1, 1});
    CHECK(h.length() == 0);
    CHECK(h.terms[0].dim == 1);
    // s = 0: plain restriction
    CHECK(hat_gamma_c(kl, {0, 0}) == gamma_complement(kl, {0, 0}));

    // check over [0,0]: pullback of k >--> Lambda along the cover of Lambda
    auto c = check_gamma_c(kl, {0, 0});
    CHECK(c.length() == 0);
    CHECK(c.terms[0].dim == 1); // k x_Lambda Lambda = k

    // functoriality of hat/check maps, stably
    Rng rng{19};
    for (int iter = 0; iter < 4; ++iter) {
        auto a = random_chain(rng, 2, 2, 4, P);
        auto b = random_chain(rng, 2, 2, 4, P);
        auto f = random_chain_map(rng, a, b);
        auto hf = hat_gamma_c_map(f, {1, 2});
        CHECK(hf.src == hat_gamma_c(a, {1, 2}));
        auto cf = check_gamma_c_map(f, {0, 1});
        CHECK(cf.src == check_gamma_c(a, {0, 1}));
    }
}

TEST_CASE("canonical gamma form") {
    u32 n = 2;
    auto ik = injective_hull(k_simple(n));
    ChainObject kl({ik.src, ik.tgt}, {ik});
    // already canonical for [0,0], l=1
    auto c = canonical_gamma_form(kl, {0, 0});
    CHECK(c.object == kl);
    // fully projective chain: canonical form is stably zero
    auto proj = chain_injective_envelope(kk_chain(n)).hull;
    auto cp = canonical_gamma_form(proj, {0, 0});
    CHECK(is_stably_zero(cp.object));

    CHECK(!in_gamma(kk_chain(n), {0, 0}).ok);
    CHECK(in_gamma(kl, {0, 0}).ok);
}

TEST_CASE("sod triangles verify") {
    Rng rng{23};
    for (u32 n : {2u, 3u}) {
        for (int l = 1; l <= 2; ++l) {
            for (int iter = 0; iter < 3; ++iter) {
                auto x = random_chain(rng, l, n, 4, P);
                for (int s = 0; s < l; ++s) {
                    auto t = sod_triangle(x, {SodCase::GammaGamma, s, 0});
                    verify_sod_triangle(t, x, {SodCase::GammaGamma, s, 0});
                }
                for (int s = 0; s <= l; ++s)
                    for (int tt = s; tt < l; ++tt) {
                        auto t = sod_triangle(x, {SodCase::GammaDelta, s, tt});
                        verify_sod_triangle(t, x, {SodCase::GammaDelta, s, tt});
                    }
                for (int s = 1; s <= l; ++s)
                    for (int tt = s; tt <= l; ++tt) {
                        auto t = sod_triangle(x, {SodCase::DeltaGamma, s, tt});
                        verify_sod_triangle(t, x, {SodCase::DeltaGamma, s, tt});
                    }
            }
        }
    }
}

TEST_CASE("sod triangle trivial factors") {
    u32 n = 2;
    // X already in the right factor Gamma^{[0,s]}: left vertex stably zero
    auto ik = injective_hull(k_simple(n));
    ChainObject kl({ik.src, ik.tgt}, {ik}); // in Gamma^{[0,0]}, l = 1
    auto t = sod_triangle(kl, {SodCase::GammaGamma, 0, 0});
    CHECK(is_stably_zero(t.left));
    // X = (k=k): top row (0 >--> k), bottom (k >--> Lambda)-shaped
    auto t2 = sod_triangle(kk_chain(n), {SodCase::GammaGamma, 0, 0});
    CHECK(t2.left.terms[0].dim == 0);
    CHECK(t2.left.terms[1].dim == 1);
    CHECK(t2.right.terms[0].dim == 1);
    CHECK(is_projective(t2.right.terms[1]));
}

TEST_CASE("sos triangles cross-check against sod stably") {
    Rng rng{29};
    for (int iter = 0; iter < 3; ++iter) {
        int l = 2;
        auto x = random_chain(rng, l, 2, 4, P);
        // case 1: V differs only in the hull tail
        auto a = sod_triangle(x, {SodCase::GammaGamma, 0, 0});
        auto b = sos_triangle(x, {SodCase::GammaGamma, 0, 0});
        verify_sod_triangle(b, x, {SodCase::GammaGamma, 0, 0});
        CHECK(a.left == b.left);
        // fill-in between the two right vertices extending the identity
        auto fills = unique_fill_in(a, b, ChainMap::identity(x));
        CHECK(is_stable_iso(fills.right));
        // case 2
        auto a2 = sod_triangle(x, {SodCase::GammaDelta, 0, 1});
        auto b2 = sos_triangle(x, {SodCase::GammaDelta, 0, 1});
        verify_sod_triangle(b2, x, {SodCase::GammaDelta, 0, 1});
        CHECK(a2.right == b2.right);
    }
}

TEST_CASE("semiorthogonality on samples") {
    Rng rng{31};
    int l = 2;
    u32 n = 2;
    for (int iter = 0; iter < 6; ++iter) {
        // (Gamma^{[s+1,l]}, Gamma^{[0,s]})
        int s = (int)rng.mod(l);
        auto u = delta_complement(random_chain(rng, l - s - 1, n, 4, P), {s + 1, l}, l);
        auto v = delta_complement(random_chain(rng, s, n, 4, P), {0, s}, l);
        CHECK(stable_hom(u, v).stable_dim() == 0);
        // (Gamma^{[s,t]}, Delta^{[s,t+1]})
        int t = s + (int)rng.mod(l - s);
        auto g = delta_complement(random_chain(rng, t - s, n, 4, P), {s, t}, l);
        auto d = delta(random_chain(rng, l - 1, n, 4, P), {s, s + 1});
        (void)d;
        auto d2 = delta(random_chain(rng, l - (t + 1 - s), n, 4, P), {s, t + 1});
        CHECK(stable_hom(g, d2).stable_dim() == 0);
        // (Delta^{[s-1,t]}, Gamma^{[s,t]}) for s >= 1
        int s2 = 1 + (int)rng.mod(l);
        int t2 = s2 + (int)rng.mod(l - s2 + 1);
        auto d3 = delta(random_chain(rng, l - (t2 - s2 + 1), n, 4, P), {s2 - 1, t2});
        auto g3 = delta_complement(random_chain(rng, t2 - s2, n, 4, P), {s2, t2}, l);
        CHECK(stable_hom(d3, g3).stable_dim() == 0);
    }
    // reversed-order sanity anti-test: Hom((k=k), (k >--> Lambda)) is nonzero
    auto ik = injective_hull(k_simple(n));
    ChainObject kl({ik.src, ik.tgt}, {ik});
    CHECK(stable_hom(kk_chain(n), kl).stable_dim() == 1);
}

TEST_CASE("theta on small cases") {
    u32 n = 2;
    // l = 0: theta = sigma on the nose
    auto single = ChainObject({LambdaModule::of_type({2, 1}, n, P)}, {});
    CHECK(theta(single) == sigma_chain(single).object);

    // theta^k of (k=k), n=2: (0 >--> k), then (k >--> Lambda)-shape, then back
    auto kk = kk_chain(n);
    auto t1 = theta(kk);
    CHECK(t1.terms[0].dim == 0);
    CHECK(t1.terms[1].dim == 1);
    auto t2 = theta(t1);
    CHECK(t2.terms[0].dim == 1);
    CHECK(t2.terms[1].dim == 2);
    CHECK(is_projective(t2.terms[1]));
    auto t3 = theta(t2);
    // stably iso back to (k=k): find an iso in the hom space
    bool found = false;
    for (auto& h : chain_hom_basis(t3, kk))
        if (is_stable_iso(h)) found = true;
    CHECK(found);
}

TEST_CASE("theta roundtrips") {
    Rng rng{37};
    for (u32 n : {2u, 3u}) {
        for (int iter = 0; iter < 4; ++iter) {
            int l = (int)rng.mod(3);
            auto x = random_chain(rng, l, n, 4, P);
            CHECK(is_stable_iso(theta_roundtrip_unit(x)));
            CHECK(is_stable_iso(theta_roundtrip_counit(x)));
        }
    }
}

TEST_CASE("tilde theta relates to theta") {
    Rng rng{41};
    for (int iter = 0; iter < 5; ++iter) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, 2, 4, P);
        auto tt = tilde_theta(x);
        auto tg = theta(x);
        // dims match theta (+) mu_{l+1}(I(X^0))
        int hull_dim = injective_hull(x.terms[0]).tgt.dim;
        for (int k = 0; k <= l; ++k) CHECK(tt.terms[k].dim == tg.terms[k].dim + hull_dim);
        CHECK(is_stable_iso(tilde_to_theta(x)));
    }
}

TEST_CASE("mutate case 1 matches the sod triangle vertices") {
    Rng rng{43};
    int l = 2;
    u32 n = 2;
    for (int iter = 0; iter < 5; ++iter) {
        int s = (int)rng.mod(l);
        int t = s + (int)rng.mod(l - s); // t < l
        auto x = delta_complement(random_chain(rng, t - s, n, 4, P), {s, t}, l);
        auto lx = mutate_case1_left(x, s, t);
        auto tri = sod_triangle(x, {SodCase::DeltaGamma, s + 1, t + 1});
        CHECK(tri.right == lx);
        auto rx = mutate_case1_right(lx, s, t);
        auto tri2 = sod_triangle(lx, {SodCase::GammaDelta, s, t});
        CHECK(tri2.left == rx);
        // roundtrip stably identity via the triangle maps
        auto back = stable_factor_through(tri2.f_left, tri.f_right);
        REQUIRE(back.has_value());
        CHECK(back->unique);
        CHECK(is_stable_iso(back->map));
    }
}

TEST_CASE("mutate cases 2-4 are exact reindexings with exact roundtrips") {
    Rng rng{47};
    int l = 2;
    for (int iter = 0; iter < 5; ++iter) {
        // case 2
        auto w = random_chain(rng, l - 1, 2, 4, P);
        auto x = delta(w, {0, 1});
        auto lx = mutate(x, {MutationEdge::Case2, true, 0, 1});
        CHECK(lx == delta(w, {1, 2}));
        CHECK(mutate(lx, {MutationEdge::Case2, false, 0, 1}) == x);
        // case 3
        auto w3 = random_chain(rng, 1, 2, 4, P); // s = 1, l = 2
        auto x3 = delta(w3, {1, l});
        auto lx3 = mutate(x3, {MutationEdge::Case3, true, 1, 0});
        CHECK(lx3 == delta_complement(w3, {0, 1}, l));
        CHECK(mutate(lx3, {MutationEdge::Case3, false, 1, 0}) == x3);
        // case 4
        auto w4 = random_chain(rng, 1, 2, 4, P);
        auto x4 = delta_complement(w4, {1, 2}, l); // in Gamma^{[1,l]}
        auto lx4 = mutate(x4, {MutationEdge::Case4, true, 1, 0});
        CHECK(lx4 == delta(gamma(x4, {0, 0}), {0, 1}));
        CHECK(mutate(lx4, {MutationEdge::Case4, false, 1, 0}) == x4);
    }
}

TEST_CASE("theta sigma witness") {
    u32 n = 2;
    // pinned instance (k=k), n=2, l=1
    auto kk = kk_chain(n);
    auto w = theta_sigma_witness(kk);
    w.first.validate();
    w.second.validate();
    CHECK(is_stable_iso(w.compare_y));
    CHECK(is_stable_iso(w.compare_final));
    // theta^3(k=k) is stably (k=k) = Sigma^2(k=k): checked in theta test

    Rng rng{53};
    for (u32 nn : {2u, 3u}) {
        for (int l = 0; l <= 2; ++l) {
            auto x = random_chain(rng, l, nn, 4, P);
            auto wx = theta_sigma_witness(x);
            wx.first.validate();
            wx.second.validate();
        }
    }
}

TEST_CASE("polygon tags and full turn") {
    // l=1, s=0: reduced triangle
    auto tags = polygon_tags(1, 0);
    REQUIRE(tags.size() == 3);
    CHECK(tags[0] == PolygonTag{true, 0, 0});
    CHECK(tags[1] == PolygonTag{false, 0, 1});
    CHECK(tags[2] == PolygonTag{true, 1, 1});
    // l=2, s=0: 8-gon
    CHECK(polygon_tags(2, 0).size() == 8);
    CHECK(!polygon_is_reduced(2, 0));
    CHECK(polygon_is_reduced(1, 0));
    CHECK(polygon_is_reduced(3, 1));

    Rng rng{59};
    for (int l = 1; l <= 2; ++l)
        for (int s = 0; s < l; ++s)
            for (int iter = 0; iter < 3; ++iter) {
                auto z = random_chain(rng, s, 2, 4, P);
                auto turned = polygon_full_turn(z, l, s);
                CHECK(turned == theta_pow(z, polygon_theta_exponent(l, s)));
            }
}

TEST_CASE("adjoint dimension equalities on samples") {
    Rng rng{61};
    int l = 2;
    for (auto& pr : adjoint_window(l)) {
        for (int iter = 0; iter < 2; ++iter) {
            auto a = random_chain(rng, adjoint_src_length(pr, l), 2, 3, P);
            auto b = random_chain(rng, adjoint_tgt_length(pr, l), 2, 3, P);
            auto la = adjoint_left_on(pr, a, l);
            auto rb = adjoint_right_on(pr, b, l);
            CHECK(stable_hom(la, b).stable_dim() == stable_hom(a, rb).stable_dim());
        }
    }
}
