#include "frobmor/stable.hpp"

namespace frobmor {

Matrix chain_vec(const ChainMap& f) {
    Matrix out(0, 1, f.src.modulus());
    for (auto& c : f.comps) out = Matrix::vstack(out, c.mat.vec());
    return out;
}

namespace {

// Chain maps X --> mu_{l-k+1}(T) are determined by the last component
// g : X^l --> T subject to g . (composite from position k-1) = 0, so the
// maps through the k-th cover summand come from one small solve each.
std::vector<ChainMap> maps_through_cover_summand(const ChainObject& x, const ChainObject& y,
                                                 int k) {
    const u32 p = x.modulus();
    const int l = x.length();
    ModuleMap pk = projective_cover(y.terms[k]);
    const LambdaModule& T = pk.src;
    if (T.dim == 0) return {};

    auto basis = hom_basis(x.terms[l], T);
    std::vector<int> keep;
    if (k > 0) {
        ModuleMap comp = ModuleMap::identity(x.terms[k - 1]);
        for (int a = k - 1; a < l; ++a) comp = compose(x.maps[a], comp);
        Matrix sys(T.dim * x.terms[k - 1].dim, (int)basis.size(), p);
        for (int c = 0; c < (int)basis.size(); ++c) {
            Matrix v = (basis[c].mat * comp.mat).vec();
            for (int i = 0; i < v.rows(); ++i) sys.at(i, c) = v.at(i, 0);
        }
        Matrix K = kernel_basis(sys);
        std::vector<ChainMap> out;
        for (int col = 0; col < K.cols(); ++col) {
            Matrix g = Matrix::zero(T.dim, x.terms[l].dim, p);
            for (int c = 0; c < (int)basis.size(); ++c) {
                u32 v = K.at(c, col);
                if (v) g = g + basis[c].mat.scaled(v);
            }
            // assemble the composite with the cover leg: component at j >= k
            // is alpha-composite . p_k . (g pulled back along x-maps)
            std::vector<ModuleMap> comps(l + 1, ModuleMap());
            ModuleMap gl(x.terms[l], T, std::move(g));
            ModuleMap leg = pk; // T --> Y^k, then pushed along y-maps
            std::vector<ModuleMap> legs{leg};
            for (int j = k + 1; j <= l; ++j) legs.push_back(compose(y.maps[j - 1], legs.back()));
            for (int j = l; j >= 0; --j) {
                if (j < k) {
                    comps[j] = ModuleMap::zero(x.terms[j], y.terms[j]);
                } else {
                    ModuleMap gj = gl;
                    for (int a = l - 1; a >= j; --a)
                        gj = compose(gj, x.maps[a]); // X^j --> T through the chain
                    comps[j] = compose(legs[j - k], gj);
                }
            }
            out.push_back(ChainMap(x, y, std::move(comps)));
        }
        return out;
    }
    // k == 0: no vanishing condition
    std::vector<ChainMap> out;
    for (const auto& b : basis) {
        std::vector<ModuleMap> comps(l + 1, ModuleMap());
        ModuleMap leg = pk;
        std::vector<ModuleMap> legs{leg};
        for (int j = 1; j <= l; ++j) legs.push_back(compose(y.maps[j - 1], legs.back()));
        for (int j = l; j >= 0; --j) {
            ModuleMap gj = b;
            for (int a = l - 1; a >= j; --a) gj = compose(gj, x.maps[a]);
            comps[j] = compose(legs[j], gj);
        }
        out.push_back(ChainMap(x, y, std::move(comps)));
    }
    return out;
}

} // namespace

StableHomSpace stable_hom(const ChainObject& x, const ChainObject& y) {
    StableHomSpace out;
    out.src = x;
    out.tgt = y;
    out.full = chain_hom_basis(x, y);
    const u32 p = x.modulus();

    int len = 0;
    for (int k = 0; k <= x.length(); ++k) len += y.terms[k].dim * x.terms[k].dim;

    Matrix cur(len, 0, p);
    for (int k = 0; k <= y.length(); ++k) {
        for (const auto& f : maps_through_cover_summand(x, y, k)) {
            Matrix cand = Matrix::hstack(cur, chain_vec(f));
            if (cand.rank() > cur.cols()) {
                out.factoring.push_back(f);
                cur = std::move(cand);
            }
        }
    }
    for (const auto& f : out.full) {
        Matrix cand = Matrix::hstack(cur, chain_vec(f));
        if (cand.rank() > cur.cols()) {
            out.stable_basis.push_back(f);
            cur = std::move(cand);
        }
    }
    out.reduction = std::move(cur);
    return out;
}

Matrix StableHomSpace::class_coords(const ChainMap& f) const {
    auto s = solve_all(reduction, chain_vec(f));
    if (!s) throw error("StableHomSpace::class_coords: map not in the hom space");
    Matrix coords((int)stable_basis.size(), 1, reduction.modulus());
    int off = (int)factoring.size();
    for (int i = 0; i < coords.rows(); ++i) coords.at(i, 0) = s->particular.at(off + i, 0);
    return coords;
}

bool is_stably_zero_map(const ChainMap& f) {
    ChainEnvelope env = chain_injective_envelope(f.src);
    if (is_injective_chain(f.tgt)) {
        try {
            (void)chain_extend_into_injective(env.embed, f);
            return true;
        } catch (const error&) {
            return false;
        }
    }
    ChainMapSolver solver(env.hull, f.tgt);
    solver.require_pre(env.embed, f);
    return solver.solve().has_value();
}

bool stably_equal(const ChainMap& f, const ChainMap& g) { return is_stably_zero_map(sub(f, g)); }

SigmaResult sigma_chain(const ChainObject& x) {
    ChainEnvelope env = chain_injective_envelope(x);
    return SigmaResult{env.cokernel, env.ses};
}

SigmaResult sigma_inv_chain(const ChainObject& x) {
    ChainCover cov = chain_projective_cover(x);
    return SigmaResult{cov.kernel, cov.ses};
}

ChainMap sigma_map(const ChainMap& f) {
    SigmaResult sa = sigma_chain(f.src);
    SigmaResult sb = sigma_chain(f.tgt);
    ChainMap phi = chain_extend_into_injective(sa.ses.mono, compose(sb.ses.mono, f));
    return chain_solve_through_epi(sa.ses.epi, compose(sb.ses.epi, phi));
}

ConeResult cone(const ChainMap& f) {
    ConeResult out;
    out.sigma_src = sigma_chain(f.src);
    ChainPushout po = chain_pushout(out.sigma_src.ses.mono, f);
    out.cone = po.corner;
    out.into = po.from_C;
    out.from_hull = po.from_B;
    out.cert = po.cert;
    // C -->> Sigma X induced by (pi | 0) through the certificate epi
    const ChainObject& I = out.sigma_src.ses.mono.tgt;
    const ChainObject& Y = f.tgt;
    std::vector<ModuleMap> joint;
    for (int k = 0; k <= f.src.length(); ++k)
        joint.push_back(ModuleMap(
            direct_sum(I.terms[k], Y.terms[k]), out.sigma_src.object.terms[k],
            Matrix::hstack(out.sigma_src.ses.epi.comps[k].mat,
                           Matrix::zero(out.sigma_src.object.terms[k].dim, Y.terms[k].dim,
                                        f.src.modulus()))));
    ChainMap joint_map(direct_sum(I, Y), out.sigma_src.object, std::move(joint));
    out.to_sigma = chain_solve_through_epi(out.cert.epi, joint_map);
    return out;
}

CoconeResult cocone(const ChainMap& f) {
    CoconeResult out;
    out.sigma_inv_tgt = sigma_inv_chain(f.tgt);
    const ChainMap& project = out.sigma_inv_tgt.ses.epi; // P(Y) -->> Y
    ChainPullback pb = chain_pullback(project, f);
    out.cocone = pb.corner;
    out.to_cover = pb.to_B;
    out.from = pb.to_D;
    out.cert = pb.cert;
    // Sigma^{-1} Y >--> C*: the pair (incl, 0) solved into the corner
    const ChainObject& K = out.sigma_inv_tgt.object;
    std::vector<ModuleMap> comps;
    for (int k = 0; k <= f.src.length(); ++k) {
        Matrix stacked = Matrix::vstack(pb.to_B.comps[k].mat, pb.to_D.comps[k].mat);
        Matrix rhs = Matrix::vstack(
            out.sigma_inv_tgt.ses.mono.comps[k].mat,
            Matrix::zero(f.src.terms[k].dim, K.terms[k].dim, f.src.modulus()));
        auto s = solve_all(stacked, rhs);
        if (!s) throw error("cocone: kernel inclusion does not factor (internal)");
        comps.push_back(ModuleMap(K.terms[k], pb.corner.terms[k], s->particular));
    }
    out.from_sigma_inv = ChainMap(K, pb.corner, std::move(comps));
    return out;
}

bool is_stable_iso(const ChainMap& f) { return is_projective_chain(cone(f).cone); }

// ---- triangles ------------------------------------------------------------------

void verify_triangle(const TriangleCertificate& t) {
    if (!(t.f_left.src == t.left) || !(t.f_left.tgt == t.middle) ||
        !(t.f_right.src == t.middle) || !(t.f_right.tgt == t.right))
        throw error("verify_triangle: endpoints inconsistent");
    switch (t.witness) {
    case TriangleCertificate::SES: {
        if (!t.ses) throw error("verify_triangle: missing SES witness");
        t.ses->validate();
        if (!(t.ses->mono == t.f_left) || !(t.ses->epi == t.f_right))
            throw error("verify_triangle: SES witness does not match the maps");
        if (t.connecting) {
            if (!is_stably_zero_map(compose(*t.connecting, t.f_right)))
                throw error("verify_triangle: connecting . epi not stably zero");
            if (!is_stably_zero_map(compose(sigma_map(t.f_left), *t.connecting)))
                throw error("verify_triangle: Sigma(mono) . connecting not stably zero");
        }
        break;
    }
    case TriangleCertificate::ConeCompare: {
        if (!t.cone_data || !t.compare) throw error("verify_triangle: missing cone witness");
        t.cone_data->cert.validate();
        if (!(compose(*t.compare, t.cone_data->into) == t.f_right))
            throw error("verify_triangle: comparison does not restrict to f_right");
        if (!is_stable_iso(*t.compare))
            throw error("verify_triangle: cone comparison is not a stable iso");
        break;
    }
    case TriangleCertificate::CoconeCompare: {
        if (!t.cocone_data || !t.compare) throw error("verify_triangle: missing cocone witness");
        t.cocone_data->cert.validate();
        if (!(compose(t.cocone_data->from, *t.compare) == t.f_left))
            throw error("verify_triangle: comparison does not restrict to f_left");
        if (!is_stable_iso(*t.compare))
            throw error("verify_triangle: cocone comparison is not a stable iso");
        break;
    }
    }
}

TriangleCertificate ses_to_triangle(const ChainSES& s) {
    TriangleCertificate t;
    t.left = s.mono.src;
    t.middle = s.mono.tgt;
    t.right = s.epi.tgt;
    t.f_left = s.mono;
    t.f_right = s.epi;
    t.witness = TriangleCertificate::SES;
    t.ses = s;
    // connecting Z --> Sigma X: extend i_X over the mono, then factor the
    // hull projection through the epi
    SigmaResult sx = sigma_chain(s.mono.src);
    ChainMap ext = chain_extend_into_injective(s.mono, sx.ses.mono);
    t.connecting = chain_solve_through_epi(s.epi, compose(sx.ses.epi, ext));
    return t;
}

TriangleCertificate triangle_from_cone(const ChainMap& u, const ChainMap& m) {
    if (!(u.tgt == m.src)) throw error("triangle_from_cone: maps not composable");
    TriangleCertificate t;
    t.left = u.src;
    t.middle = u.tgt;
    t.right = m.tgt;
    t.f_left = u;
    t.f_right = m;
    t.witness = TriangleCertificate::ConeCompare;
    t.cone_data = cone(u);
    // m . u is stably zero, so it factors exactly through the envelope of U
    const ChainMap& i_U = t.cone_data->sigma_src.ses.mono;
    ChainMap psi = chain_extend_along_mono(i_U, compose(m, u));
    // compare : C(u) --> V induced by (psi | m) through the certificate epi
    const ChainObject& I = i_U.tgt;
    std::vector<ModuleMap> joint;
    for (int k = 0; k <= u.src.length(); ++k)
        joint.push_back(ModuleMap(direct_sum(I.terms[k], m.src.terms[k]), m.tgt.terms[k],
                                  Matrix::hstack(psi.comps[k].mat, m.comps[k].mat)));
    ChainMap joint_map(direct_sum(I, m.src), m.tgt, std::move(joint));
    t.compare = chain_solve_through_epi(t.cone_data->cert.epi, joint_map);
    if (!is_stable_iso(*t.compare))
        throw error("triangle_from_cone: comparison with the cone is not a stable iso");
    return t;
}

TriangleCertificate triangle_from_cocone(const ChainMap& u, const ChainMap& m) {
    if (!(u.tgt == m.src)) throw error("triangle_from_cocone: maps not composable");
    TriangleCertificate t;
    t.left = u.src;
    t.middle = u.tgt;
    t.right = m.tgt;
    t.f_left = u;
    t.f_right = m;
    t.witness = TriangleCertificate::CoconeCompare;
    t.cocone_data = cocone(m);
    // m . u lifts through the cover of V; the pair (lift, u) maps into the
    // pullback corner
    ChainMap chi = chain_lift_through_epi(t.cocone_data->sigma_inv_tgt.ses.epi, compose(m, u));
    std::vector<ModuleMap> comps;
    for (int k = 0; k <= u.src.length(); ++k) {
        Matrix stacked = Matrix::vstack(t.cocone_data->to_cover.comps[k].mat,
                                        t.cocone_data->from.comps[k].mat);
        Matrix rhs = Matrix::vstack(chi.comps[k].mat, u.comps[k].mat);
        auto s = solve_all(stacked, rhs);
        if (!s) throw error("triangle_from_cocone: comparison does not land in the pullback");
        comps.push_back(ModuleMap(u.src.terms[k], t.cocone_data->cocone.terms[k], s->particular));
    }
    t.compare = ChainMap(u.src, t.cocone_data->cocone, std::move(comps));
    if (!is_stable_iso(*t.compare))
        throw error("triangle_from_cocone: comparison with the cocone is not a stable iso");
    return t;
}

std::optional<StableFactor> stable_factor_through(const ChainMap& u, const ChainMap& m) {
    if (!(u.tgt == m.tgt)) throw error("stable_factor_through: targets differ");
    StableHomSpace hom_xb = stable_hom(m.src, m.tgt);
    ChainMapSolver solver(m.src, u.src);
    std::vector<ChainMapSolver::ScalarTerm> extra;
    for (const auto& fmap : hom_xb.factoring) extra.push_back({solver.add_scalar(), fmap});
    solver.require_post(u, m, extra);
    auto sol = solver.solve();
    if (!sol) return std::nullopt;
    StableFactor out{sol->particular, true};
    for (const auto& k : sol->kernel)
        if (!is_stably_zero_map(k.map)) {
            out.unique = false;
            break;
        }
    return out;
}

FillIns unique_fill_in(const TriangleCertificate& top, const TriangleCertificate& bottom,
                       const ChainMap& f) {
    if (!(f.src == top.middle) || !(f.tgt == bottom.middle))
        throw error("unique_fill_in: middle map endpoints wrong");

    auto solve_side = [&](const ChainObject& A, const ChainObject& B, const ChainMap& fixed,
                          const ChainMap& rhs, bool post) {
        ChainMapSolver solver(A, B);
        StableHomSpace hom = stable_hom(rhs.src, rhs.tgt);
        std::vector<ChainMapSolver::ScalarTerm> extra;
        for (const auto& fmap : hom.factoring) extra.push_back({solver.add_scalar(), fmap});
        if (post)
            solver.require_post(fixed, rhs, extra);
        else
            solver.require_pre(fixed, rhs, extra);
        auto sol = solver.solve();
        if (!sol) throw error("unique_fill_in: no fill-in");
        for (const auto& k : sol->kernel)
            if (!is_stably_zero_map(k.map)) throw error("unique_fill_in: not unique");
        return sol->particular;
    };

    FillIns out;
    // left square: bottom.f_left . u == f . top.f_left stably
    out.left = solve_side(top.left, bottom.left, bottom.f_left, compose(f, top.f_left), true);
    // right square: v . top.f_right == bottom.f_right . f stably
    out.right = solve_side(top.right, bottom.right, top.f_right, compose(bottom.f_right, f), false);
    return out;
}

} // namespace frobmor
