#include "doctest.h"

#include "frobmor/chain.hpp"
#include "test_util.hpp"

using namespace frobmor;
using testutil::Rng;
using testutil::random_chain;
using testutil::random_chain_map;
using testutil::random_module;

namespace {
constexpr u32 P = 5;
LambdaModule k_simple(u32 n) { return LambdaModule::jordan(1, n, P); }
LambdaModule lambda_free(u32 n) { return LambdaModule::jordan((int)n, n, P); }

ChainObject kk_chain(u32 n) { return ChainObject::constant(1, k_simple(n)); }
ChainObject k_into_lambda() {
    auto ik = injective_hull(k_simple(2));
    return ChainObject({ik.src, ik.tgt}, {ik});
}
} // namespace

TEST_CASE("mu shapes") {
    u32 n = 2;
    auto a = LambdaModule::of_type({2, 1}, n, P);
    CHECK(mu(3, a, 2) == ChainObject::constant(2, a));
    auto m1 = mu(1, a, 2);
    CHECK(m1.terms[0].dim == 0);
    CHECK(m1.terms[1].dim == 0);
    CHECK(m1.terms[2] == a);
    CHECK(mu(2, LambdaModule::zero(n, P), 3).total_dim() == 0);
    CHECK_THROWS_AS(mu(4, a, 2), error);
}

TEST_CASE("chain constructor rejects non-monic maps") {
    u32 n = 2;
    auto lam = lambda_free(n);
    ModuleMap mult_x(lam, lam, lam.action); // not injective on Lambda
    CHECK_THROWS_AS(ChainObject({lam, lam}, {mult_x}), error);
}

TEST_CASE("projective chain recognition") {
    u32 n = 2;
    auto lam = lambda_free(n);
    CHECK(is_projective_chain(mu(2, lam, 1)));
    CHECK(is_projective_chain(ChainObject::constant(1, lam)));
    CHECK(!is_projective_chain(kk_chain(n)));
    auto incl = inclusion_first(lam, lam); // (Lambda >--> Lambda^2) first coord
    CHECK(is_projective_chain(ChainObject({lam, incl.tgt}, {incl})));
    CHECK(!is_projective_chain(k_into_lambda()));
}

TEST_CASE("chain envelope basics") {
    u32 n = 2;
    auto lamchain = ChainObject::constant(1, lambda_free(n));
    auto env = chain_injective_envelope(lamchain);
    CHECK(env.embed == ChainMap::identity(lamchain));
    CHECK(env.cokernel.total_dim() == 0);

    // mu_1(k): envelope mu_1(Lambda), cokernel mu_1(k)
    auto env2 = chain_injective_envelope(mu(1, k_simple(n), 1));
    CHECK(env2.hull.terms[0].dim == 0);
    CHECK(env2.hull.terms[1] == lambda_free(n));
    CHECK(env2.cokernel.terms[1].dim == 1);

    // (k = k): hull (Lambda >--> W), dim W = 2 free, cokernel (k iso k)
    auto env3 = chain_injective_envelope(kk_chain(n));
    CHECK(env3.hull.terms[0] == lambda_free(n));
    CHECK(env3.hull.terms[1].dim == 2);
    CHECK(is_projective(env3.hull.terms[1]));
    CHECK(env3.cokernel.terms[0].dim == 1);
    CHECK(env3.cokernel.terms[1].dim == 1);
    CHECK(env3.cokernel.maps[0].is_epi());
    env3.ses.validate();
}

TEST_CASE("chain cover basics") {
    u32 n = 2;
    auto cov = chain_projective_cover(mu(1, k_simple(n), 1));
    CHECK(cov.cover.terms[0].dim == 0);
    CHECK(cov.cover.terms[1] == lambda_free(n));

    // (k = k): cover (Lambda >--> Lambda (+) Lambda)
    auto cov2 = chain_projective_cover(kk_chain(n));
    CHECK(cov2.cover.terms[0] == lambda_free(n));
    CHECK(cov2.cover.terms[1].dim == 4);
    cov2.ses.validate();

    auto pc = chain_projective_cover(ChainObject::constant(2, lambda_free(n)));
    CHECK(pc.project == ChainMap::identity(pc.cover));
}

TEST_CASE("envelope and cover SESs verify on random chains") {
    Rng rng{101};
    for (u32 n : {2u, 3u}) {
        for (int l = 0; l <= 3; ++l) {
            for (int i = 0; i < 6; ++i) {
                auto x = random_chain(rng, l, n, 5, P);
                auto env = chain_injective_envelope(x);
                env.ses.validate();
                CHECK(is_injective_chain(env.hull));
                auto cov = chain_projective_cover(x);
                cov.ses.validate();
                CHECK(is_projective_chain(cov.cover));
            }
        }
    }
}

TEST_CASE("extend_left_inverse") {
    u32 n = 2;
    Rng rng{202};
    for (int i = 0; i < 10; ++i) {
        int l = 1 + (int)rng.mod(3);
        auto I = chain_injective_envelope(random_chain(rng, l, n, 4, P)).hull;
        auto t = random_chain(rng, l, n, 4, P);
        auto s = chain_inclusion_first(I, t);
        auto r0 = projection_first(I.terms[0], t.terms[0]);
        auto r = extend_left_inverse(s, r0);
        CHECK(compose(r, s) == ChainMap::identity(I));
        CHECK(r.comps[0] == r0);
    }
    auto I = chain_injective_envelope(kk_chain(n)).hull;
    auto r = extend_left_inverse(ChainMap::identity(I), ModuleMap::identity(I.terms[0]));
    CHECK(r == ChainMap::identity(I));
}

TEST_CASE("split_off_equalities") {
    u32 n = 2;
    auto lam = lambda_free(n);
    auto s = split_off_equalities(ChainObject::constant(2, lam));
    s.validate();
    CHECK(s.mono.src.total_dim() == 0);

    auto incl = inclusion_first(lam, lam);
    auto s2 = split_off_equalities(ChainObject({lam, incl.tgt}, {incl}));
    s2.validate();
    CHECK(s2.mono.src.terms[0].dim == 0);
    CHECK(s2.mono.src.terms[1].dim == 2);
    CHECK(s2.epi.tgt == ChainObject::constant(1, lam));

    split_off_equalities(ChainObject::zero(2, n, P)).validate();

    // random split chains reassemble: [mono | any section] spans X^k
    Rng rng{303};
    for (int i = 0; i < 8; ++i) {
        std::vector<LambdaModule> terms{random_module(rng, 2, 4, P)};
        std::vector<ModuleMap> maps;
        int l = 1 + (int)rng.mod(2);
        for (int k = 0; k < l; ++k) {
            auto r = random_module(rng, 2, 3, P);
            maps.push_back(inclusion_first(terms.back(), r));
            terms.push_back(maps.back().tgt);
        }
        ChainObject x(terms, maps);
        auto ses = split_off_equalities(x);
        ses.validate();
        for (int k = 0; k <= l; ++k) {
            auto sec =
                solve_all(ses.epi.comps[k].mat, Matrix::identity(ses.epi.tgt.terms[k].dim, P));
            REQUIRE(sec.has_value());
            CHECK(Matrix::hstack(ses.mono.comps[k].mat, sec->particular).rank() ==
                  x.terms[k].dim);
        }
    }
}

TEST_CASE("epi_comp") {
    u32 n = 2;
    Rng rng{404};
    for (int i = 0; i < 8; ++i) {
        int l = (int)rng.mod(3);
        auto I = chain_injective_envelope(random_chain(rng, l, n, 3, P)).hull;
        auto c = random_chain(rng, l, n, 4, P);
        auto c2 = random_chain(rng, l, n, 3, P);
        auto cc = direct_sum(c, c2);
        ChainSES ses(chain_inclusion_first(c, c2), chain_projection_second(c, c2));
        ChainSES bigsplit(chain_inclusion_first(I, cc), chain_projection_second(I, cc));
        ChainMap bigsection = chain_inclusion_second(I, cc);
        auto out = epi_comp(bigsplit, ses, bigsection);
        out.validate();
        CHECK(out.epi.tgt == c2);
        CHECK(out.mono.src == direct_sum(I, c));
    }
}

TEST_CASE("gamma_split") {
    u32 n = 2;
    auto gs = gamma_split(k_into_lambda(), 0, 0);
    gs.quotient.validate();
    gs.section.validate();
    CHECK(gs.reduced.terms[0].dim == 1);

    auto gs2 = gamma_split(ChainObject::constant(1, lambda_free(n)), 0, 0);
    gs2.quotient.validate();
    gs2.section.validate();
    CHECK(is_projective_chain(gs2.quotient.mono.src));

    CHECK_THROWS_AS(gamma_split(kk_chain(n), 0, 0), error);

    Rng rng{505};
    for (int i = 0; i < 10; ++i) {
        int mid = 1 + (int)rng.mod(2);
        auto core = random_chain(rng, mid, n, 4, P);
        auto hull_last = injective_hull(core.terms.back());
        std::vector<LambdaModule> terms = core.terms;
        std::vector<ModuleMap> maps = core.maps;
        terms.push_back(hull_last.tgt);
        maps.push_back(hull_last);
        ChainObject x(terms, maps);
        int s = 0, t = mid;
        auto g = gamma_split(x, s, t);
        g.quotient.validate();
        g.section.validate();
        CHECK(is_projective_chain(g.quotient.mono.src));
        CHECK(is_projective_chain(g.section.epi.tgt));
        // p then i and i then p differ from identities by maps through
        // projective chains
        CHECK(compose(g.quotient.epi, g.section.mono) == ChainMap::identity(g.reduced));
        ChainMap defect = sub(ChainMap::identity(x), compose(g.section.mono, g.quotient.epi));
        // defect = mono . retraction, visibly through the projective kernel
        CHECK(is_projective_chain(g.quotient.mono.src));
        bool through_proj = false;
        {
            // solve defect = mono . r for some r
            ChainMapSolver solver(x, g.quotient.mono.src);
            solver.require_post(g.quotient.mono, defect);
            through_proj = solver.solve().has_value();
        }
        CHECK(through_proj);
        for (int k = 0; k < s; ++k) CHECK(g.reduced.terms[k].dim == 0);
        for (int k = t + 2; k <= x.length(); ++k)
            CHECK(g.reduced.terms[k] == g.reduced.terms[t + 1]);
    }

    // interval with s > 0: prepend an injective head
    for (int i = 0; i < 6; ++i) {
        auto core = random_chain(rng, 1, n, 4, P);
        auto head = injective_hull(random_module(rng, n, 3, P)).tgt;
        // head >--> head (+) core^0 >--> head (+) core^1
        auto i0 = inclusion_first(head, core.terms[0]);
        auto step = direct_sum_map(ModuleMap::identity(head), core.maps[0]);
        ChainObject x({head, i0.tgt, step.tgt}, {i0, step});
        auto hull_last = injective_hull(x.terms.back());
        std::vector<LambdaModule> terms = x.terms;
        std::vector<ModuleMap> maps = x.maps;
        terms.push_back(hull_last.tgt);
        maps.push_back(hull_last);
        ChainObject padded(terms, maps);
        auto g = gamma_split(padded, 1, 2);
        g.quotient.validate();
        g.section.validate();
        CHECK(g.reduced.terms[0].dim == 0);
        CHECK(is_projective_chain(g.quotient.mono.src));
    }
}

TEST_CASE("chain pushout and pullback") {
    u32 n = 2;
    Rng rng{606};
    for (int i = 0; i < 10; ++i) {
        int l = (int)rng.mod(3);
        auto x = random_chain(rng, l, n, 4, P);
        auto env = chain_injective_envelope(x);
        auto y = random_chain(rng, l, n, 4, P);
        auto f = random_chain_map(rng, x, y);
        auto po = chain_pushout(env.embed, f);
        po.cert.validate();
        CHECK(compose(po.from_B, env.embed) == compose(po.from_C, f));

        auto cov = chain_projective_cover(y);
        auto g = random_chain_map(rng, x, y);
        auto pb = chain_pullback(cov.project, g);
        pb.cert.validate();
        CHECK(compose(cov.project, pb.to_B) == compose(g, pb.to_D));
    }
}

TEST_CASE("identity lies in the chain endomorphism span") {
    u32 n = 2;
    Rng rng{707};
    for (int i = 0; i < 6; ++i) {
        int l = (int)rng.mod(3);
        auto a = random_chain(rng, l, n, 4, P);
        auto endo = chain_hom_basis(a, a);
        int len = 0;
        for (int k = 0; k <= l; ++k) len += a.terms[k].dim * a.terms[k].dim;
        Matrix stack(len, (int)endo.size(), P);
        Matrix target(len, 1, P);
        int off = 0;
        for (int k = 0; k <= l; ++k) {
            auto idm = Matrix::identity(a.terms[k].dim, P).vec();
            for (int r = 0; r < idm.rows(); ++r) target.at(off + r, 0) = idm.at(r, 0);
            for (int j = 0; j < (int)endo.size(); ++j) {
                auto v = endo[j].comps[k].mat.vec();
                for (int r = 0; r < v.rows(); ++r) stack.at(off + r, j) = v.at(r, 0);
            }
            off += a.terms[k].dim * a.terms[k].dim;
        }
        CHECK(solve_all(stack, target).has_value());
    }
}
