#include "doctest.h"

#include "frobmor/stable.hpp"
#include "test_util.hpp"

using namespace frobmor;
using testutil::Rng;
using testutil::random_chain;
using testutil::random_chain_map;

namespace {
constexpr u32 P = 5;
LambdaModule k_simple(u32 n) { return LambdaModule::jordan(1, n, P); }
ChainObject kk_chain(u32 n) { return ChainObject::constant(1, k_simple(n)); }
ChainObject k_into_lambda() {
    auto ik = injective_hull(k_simple(2));
    return ChainObject({ik.src, ik.tgt}, {ik});
}

// comparison X --> Sigma^{-1} Sigma X through a lift of the hull projection
ChainMap sigma_unit(const ChainObject& x) {
    SigmaResult sx = sigma_chain(x);
    SigmaResult back = sigma_inv_chain(sx.object);
    ChainMap h = chain_lift_through_epi(back.ses.epi, sx.ses.epi);
    ChainMap hi = compose(h, sx.ses.mono);
    std::vector<ModuleMap> comps;
    for (int k = 0; k <= x.length(); ++k) {
        auto s = solve_all(back.ses.mono.comps[k].mat, hi.comps[k].mat);
        REQUIRE(s.has_value());
        comps.push_back(ModuleMap(x.terms[k], back.object.terms[k], s->particular));
    }
    return ChainMap(x, back.object, std::move(comps));
}

} // namespace

TEST_CASE("stable hom dimensions") {
    u32 n = 2;
    auto kk = kk_chain(n);
    CHECK(stable_hom(kk, kk).stable_dim() == 1);
    CHECK(stable_hom(kk, k_into_lambda()).stable_dim() == 1);

    auto proj = chain_injective_envelope(kk).hull;
    Rng rng{11};
    for (int i = 0; i < 5; ++i) {
        auto y = random_chain(rng, 1, n, 4, P);
        CHECK(stable_hom(proj, y).stable_dim() == 0);
    }
}

TEST_CASE("stable dim unchanged by projective summands") {
    Rng rng{13};
    for (int i = 0; i < 8; ++i) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, 2, 4, P);
        auto y = random_chain(rng, l, 2, 4, P);
        auto proj = chain_injective_envelope(random_chain(rng, l, 2, 3, P)).hull;
        CHECK(stable_hom(x, y).stable_dim() == stable_hom(direct_sum(x, proj), y).stable_dim());
        CHECK(stable_hom(x, y).stable_dim() == stable_hom(x, direct_sum(y, proj)).stable_dim());
    }
}

TEST_CASE("factoring subspace agrees through cover and through hull") {
    Rng rng{17};
    for (int i = 0; i < 8; ++i) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, 2, 4, P);
        auto y = random_chain(rng, l, 2, 4, P);
        auto sh = stable_hom(x, y);
        auto env = chain_injective_envelope(x);
        Matrix via_hull(chain_vec(ChainMap::zero(x, y)).rows(), 0, P);
        for (const auto& h : chain_hom_basis(env.hull, y))
            via_hull = Matrix::hstack(via_hull, chain_vec(compose(h, env.embed)));
        Matrix via_cover(via_hull.rows(), 0, P);
        for (const auto& f : sh.factoring) via_cover = Matrix::hstack(via_cover, chain_vec(f));
        CHECK(via_hull.rank() == via_cover.rank());
        CHECK(Matrix::hstack(via_hull, via_cover).rank() == via_cover.rank());
    }
}

TEST_CASE("sigma basics") {
    u32 n = 2;
    auto proj = chain_injective_envelope(kk_chain(n)).hull;
    CHECK(is_stably_zero(sigma_chain(proj).object));

    // Sigma(k=k) is stably iso to (k=k): find an iso in the hom space
    auto s = sigma_chain(kk_chain(n));
    bool found = false;
    for (auto& h : chain_hom_basis(s.object, kk_chain(n)))
        if (is_stable_iso(h)) found = true;
    CHECK(found);

    Rng rng{19};
    for (int i = 0; i < 6; ++i) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, 2, 4, P);
        CHECK(is_stable_iso(sigma_unit(x)));
    }
}

TEST_CASE("sigma_map is functorial stably") {
    Rng rng{23};
    for (int i = 0; i < 5; ++i) {
        int l = (int)rng.mod(2);
        auto x = random_chain(rng, l, 2, 4, P);
        auto y = random_chain(rng, l, 2, 4, P);
        auto z = random_chain(rng, l, 2, 4, P);
        auto f = random_chain_map(rng, x, y);
        auto g = random_chain_map(rng, y, z);
        CHECK(stably_equal(sigma_map(compose(g, f)), compose(sigma_map(g), sigma_map(f))));
        CHECK(stably_equal(sigma_map(ChainMap::identity(x)),
                           ChainMap::identity(sigma_chain(x).object)));
    }
}

TEST_CASE("cone basics") {
    u32 n = 2;
    auto kk = kk_chain(n);
    CHECK(is_stably_zero(cone(ChainMap::identity(kk)).cone));

    // cone(X --> 0) is Sigma X on the nose
    auto z = ChainObject::zero(1, n, P);
    auto c = cone(ChainMap::zero(kk, z));
    CHECK(c.cone == sigma_chain(kk).object);

    Rng rng{29};
    for (int i = 0; i < 6; ++i) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, 2, 4, P);
        auto y = random_chain(rng, l, 2, 4, P);
        auto f = random_chain_map(rng, x, y);
        auto cf = cone(f);
        cf.cert.validate();
        CHECK(is_stably_zero_map(compose(cf.into, f)));
        CHECK(is_stably_zero_map(compose(cf.to_sigma, cf.into)));
        auto cc = cocone(f);
        cc.cert.validate();
        CHECK(is_stably_zero_map(compose(f, cc.from)));
        CHECK(is_stably_zero_map(compose(cc.from, cc.from_sigma_inv)));
    }
}

TEST_CASE("is_stable_iso") {
    u32 n = 2;
    auto kk = kk_chain(n);
    CHECK(is_stable_iso(ChainMap::identity(kk)));
    CHECK(!is_stable_iso(ChainMap::zero(kk, kk)));
    auto proj = chain_injective_envelope(kk).hull;
    CHECK(is_stable_iso(chain_inclusion_first(kk, proj)));
    CHECK(is_stable_iso(chain_projection_first(kk, proj)));
}

TEST_CASE("ses_to_triangle") {
    u32 n = 2;
    Rng rng{31};
    for (int i = 0; i < 6; ++i) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, n, 4, P);
        auto t = ses_to_triangle(sigma_chain(x).ses);
        verify_triangle(t);
        auto y = random_chain(rng, l, n, 4, P);
        ChainSES split(chain_inclusion_first(x, y), chain_projection_second(x, y));
        auto ts = ses_to_triangle(split);
        verify_triangle(ts);
        CHECK(is_stably_zero_map(*ts.connecting));
    }
    for (int i = 0; i < 4; ++i) {
        auto x = random_chain(rng, 1, n, 4, P);
        auto y = random_chain(rng, 1, n, 4, P);
        auto f = random_chain_map(rng, x, y);
        auto cf = cone(f);
        ChainSES s(cf.into, cf.to_sigma);
        verify_triangle(ses_to_triangle(s));
    }
}

TEST_CASE("triangle_from_cone and from_cocone on split pairs") {
    u32 n = 2;
    Rng rng{37};
    for (int i = 0; i < 6; ++i) {
        int l = (int)rng.mod(2);
        auto a = random_chain(rng, l, n, 4, P);
        auto b = random_chain(rng, l, n, 4, P);
        auto u = chain_inclusion_first(a, b);
        auto m = chain_projection_second(a, b);
        verify_triangle(triangle_from_cone(u, m));
        verify_triangle(triangle_from_cocone(u, m));
    }
}

TEST_CASE("stable_factor_through") {
    u32 n = 2;
    Rng rng{41};
    for (int i = 0; i < 6; ++i) {
        int l = (int)rng.mod(2);
        auto a = random_chain(rng, l, n, 4, P);
        auto x = random_chain(rng, l, n, 4, P);
        auto u = random_chain_map(rng, a, x);
        auto th = random_chain_map(rng, x, a);
        auto res = stable_factor_through(u, compose(u, th));
        REQUIRE(res.has_value());
        CHECK(stably_equal(compose(u, res->map), compose(u, th)));
    }
}

TEST_CASE("unique_fill_in identity") {
    u32 n = 2;
    Rng rng{43};
    auto x = random_chain(rng, 1, n, 4, P);
    auto y = random_chain(rng, 1, n, 4, P);
    auto u = chain_inclusion_first(x, y);
    auto m = chain_projection_second(x, y);
    auto t = triangle_from_cone(u, m);
    // fill-ins over the identity need the semiorthogonality precondition;
    // here we only exercise solvability and stable commutation
    try {
        auto fid = unique_fill_in(t, t, ChainMap::identity(t.middle));
        CHECK(stably_equal(compose(t.f_left, fid.left), compose(ChainMap::identity(t.middle), t.f_left)));
        auto f0 = unique_fill_in(t, t, ChainMap::zero(t.middle, t.middle));
        CHECK(is_stably_zero_map(f0.left));
        CHECK(is_stably_zero_map(f0.right));
    } catch (const error& e) {
        // "not unique" is acceptable here: Hom(x-part, y-part) need not vanish
        CHECK(std::string(e.what()).find("not unique") != std::string::npos);
    }
}
