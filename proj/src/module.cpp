#include "frobmor/module.hpp"



#include <algorithm>
#include <numeric>

namespace frobmor {

LambdaModule::LambdaModule(int d, u32 nn, Matrix act) : dim(d), n(nn), action(std::move(act)) {
    if (n < 1) throw error("LambdaModule: n must be >= 1");
    if (action.rows() != dim || action.cols() != dim)
        throw error("LambdaModule: action must be dim x dim");
    if (!action.power((int)n).is_zero()) throw error("LambdaModule: action^n != 0");
}

LambdaModule LambdaModule::zero(u32 n, u32 p) { return LambdaModule(0, n, Matrix(0, 0, p)); }

LambdaModule LambdaModule::jordan(int d, u32 n, u32 p) {
    if (d < 0 || d > (int)n) throw error("LambdaModule::jordan: block size out of range");
    Matrix a(d, d, p);
    for (int i = 0; i + 1 < d; ++i) a.at(i + 1, i) = 1;
    return LambdaModule(d, n, std::move(a));
}

LambdaModule LambdaModule::of_type(const std::vector<int>& parts, u32 n, u32 p) {
    LambdaModule m = zero(n, p);
    for (int d : parts) m = direct_sum(m, jordan(d, n, p));
    return m;
}

ModuleMap::ModuleMap(LambdaModule s, LambdaModule t, Matrix m)
    : src(std::move(s)), tgt(std::move(t)), mat(std::move(m)) {
    if (src.n != tgt.n) throw error("ModuleMap: nilpotency order mismatch");
    if (mat.rows() != tgt.dim || mat.cols() != src.dim) throw error("ModuleMap: shape mismatch");
    if (mat * src.action != tgt.action * mat) throw error("ModuleMap: not Lambda-linear");
}

ModuleMap ModuleMap::identity(const LambdaModule& m) {
    return ModuleMap(m, m, Matrix::identity(m.dim, m.modulus()));
}
ModuleMap ModuleMap::zero(const LambdaModule& s, const LambdaModule& t) {
    return ModuleMap(s, t, Matrix::zero(t.dim, s.dim, s.modulus()));
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (!(g.src == f.tgt)) throw error("compose: middle objects differ");
    return ModuleMap(f.src, g.tgt, g.mat * f.mat);
}
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
    if (!(a.src == b.src) || !(a.tgt == b.tgt)) throw error("ModuleMap+: object mismatch");
    return ModuleMap(a.src, a.tgt, a.mat + b.mat);
}
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) {
    if (!(a.src == b.src) || !(a.tgt == b.tgt)) throw error("ModuleMap-: object mismatch");
    return ModuleMap(a.src, a.tgt, a.mat - b.mat);
}

ShortExactSeq::ShortExactSeq(ModuleMap m, ModuleMap e, bool check)
    : mono(std::move(m)), epi(std::move(e)) {
    if (check) validate();
}

void ShortExactSeq::validate() const {
    if (!(mono.tgt == epi.src)) throw error("ShortExactSeq: not composable");
    if (!mono.is_mono()) throw error("ShortExactSeq: mono not injective");
    if (!epi.is_epi()) throw error("ShortExactSeq: epi not surjective");
    if (!(epi.mat * mono.mat).is_zero()) throw error("ShortExactSeq: composite nonzero");
    if (mono.src.dim + epi.tgt.dim != mono.tgt.dim)
        throw error("ShortExactSeq: dimensions do not add up");
}

LambdaModule direct_sum(const LambdaModule& a, const LambdaModule& b) {
    if (a.n != b.n) throw error("direct_sum: n mismatch");
    return LambdaModule(a.dim + b.dim, a.n, Matrix::block_diag(a.action, b.action));
}

ModuleMap direct_sum_map(const ModuleMap& f, const ModuleMap& g) {
    return ModuleMap(direct_sum(f.src, g.src), direct_sum(f.tgt, g.tgt),
                     Matrix::block_diag(f.mat, g.mat));
}

ModuleMap inclusion_first(const LambdaModule& a, const LambdaModule& b) {
    Matrix m = Matrix::vstack(Matrix::identity(a.dim, a.modulus()),
                              Matrix::zero(b.dim, a.dim, a.modulus()));
    return ModuleMap(a, direct_sum(a, b), std::move(m));
}
ModuleMap inclusion_second(const LambdaModule& a, const LambdaModule& b) {
    Matrix m = Matrix::vstack(Matrix::zero(a.dim, b.dim, a.modulus()),
                              Matrix::identity(b.dim, b.modulus()));
    return ModuleMap(b, direct_sum(a, b), std::move(m));
}
ModuleMap projection_first(const LambdaModule& a, const LambdaModule& b) {
    Matrix m = Matrix::hstack(Matrix::identity(a.dim, a.modulus()),
                              Matrix::zero(a.dim, b.dim, a.modulus()));
    return ModuleMap(direct_sum(a, b), a, std::move(m));
}
ModuleMap projection_second(const LambdaModule& a, const LambdaModule& b) {
    Matrix m = Matrix::hstack(Matrix::zero(b.dim, a.dim, a.modulus()),
                              Matrix::identity(b.dim, b.modulus()));
    return ModuleMap(direct_sum(a, b), b, std::move(m));
}

// ---- Jordan ---------------------------------------------------------------

JordanData jordan_type(const LambdaModule& m) {
    const u32 p = m.modulus();
    const int n = (int)m.n;

    // ranks of powers give block counts; chains by greedy completion:
    // a top of height j must be independent modulo ker N^{j-1} + N ker N^{j+1}.
    std::vector<Matrix> pw;
    pw.push_back(Matrix::identity(m.dim, p));
    for (int j = 1; j <= n + 1; ++j) pw.push_back(pw.back() * m.action);

    std::vector<Matrix> ker; // ker[j] = basis of ker N^j
    for (int j = 0; j <= n + 1; ++j) ker.push_back(kernel_basis(pw[j]));

    std::vector<std::pair<int, Matrix>> tops; // (height, top vector)
    for (int j = n; j >= 1; --j) {
        Matrix low = Matrix::hstack(ker[j - 1], m.action * ker[j + 1]);
        Matrix cur = low;
        int r = cur.rank();
        const Matrix& cand = ker[j];
        for (int c = 0; c < cand.cols(); ++c) {
            Matrix ext = Matrix::hstack(cur, cand.column(c));
            if (ext.rank() > r) {
                tops.push_back({j, cand.column(c)});
                cur = std::move(ext);
                ++r;
            }
        }
    }

    JordanData out;
    Matrix basis(m.dim, m.dim, p);
    int col = 0;
    for (auto& [h, v] : tops) {
        out.parts.push_back(h);
        Matrix w = v;
        for (int i = 0; i < h; ++i) {
            for (int r = 0; r < m.dim; ++r) basis.at(r, col) = w.at(r, 0);
            ++col;
            w = m.action * w;
        }
    }
    if (col != m.dim) throw error("jordan_type: basis incomplete (internal)");
    out.basis = std::move(basis);
    out.canonical = LambdaModule::of_type(out.parts, m.n, p);
    return out;
}

bool is_projective(const LambdaModule& m) {
    if (m.dim == 0) return true;
    return (int)m.n * m.action.power((int)m.n - 1).rank() == m.dim;
}

namespace {

// Blockwise socle embedding k[x]/(x^d) >--> k[x]/(x^n), 1 |-> x^{n-d}.
Matrix jordan_embed(int d, int n, u32 p) {
    Matrix m(n, d, p);
    for (int i = 0; i < d; ++i) m.at(n - d + i, i) = 1;
    return m;
}
// Truncation k[x]/(x^n) -->> k[x]/(x^d), x^j |-> x^j for j < d.
Matrix jordan_trunc(int d, int n, u32 p) {
    Matrix m(d, n, p);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
}

} // namespace

ModuleMap injective_hull(const LambdaModule& m) {
    if (is_projective(m)) return ModuleMap::identity(m);
    const u32 p = m.modulus();
    JordanData jd = jordan_type(m);
    Matrix embed(0, 0, p);
    std::vector<int> hull_parts;
    for (int d : jd.parts) {
        embed = Matrix::block_diag(embed, jordan_embed(d, (int)m.n, p));
        hull_parts.push_back((int)m.n);
    }
    LambdaModule hull = LambdaModule::of_type(hull_parts, m.n, p);
    return ModuleMap(m, hull, embed * inverse(jd.basis));
}

ModuleMap projective_cover(const LambdaModule& m) {
    if (is_projective(m)) return ModuleMap::identity(m);
    const u32 p = m.modulus();
    JordanData jd = jordan_type(m);
    Matrix trunc(0, 0, p);
    std::vector<int> cover_parts;
    for (int d : jd.parts) {
        trunc = Matrix::block_diag(trunc, jordan_trunc(d, (int)m.n, p));
        cover_parts.push_back((int)m.n);
    }
    LambdaModule cover = LambdaModule::of_type(cover_parts, m.n, p);
    return ModuleMap(cover, m, jd.basis * trunc);
}

SuspendResult suspend(const LambdaModule& m) {
    ModuleMap i = injective_hull(m);
    QuotientResult q = quotient_module(i);
    SuspendResult out;
    out.module = q.module;
    out.ses = ShortExactSeq(i, q.projection);
    return out;
}

SuspendResult loop(const LambdaModule& m) {
    ModuleMap p = projective_cover(m);
    KernelResult k = kernel_module(p);
    SuspendResult out;
    out.module = k.module;
    out.ses = ShortExactSeq(k.inclusion, p);
    return out;
}

QuotientResult quotient_module(const ModuleMap& mono) {
    if (!mono.is_mono()) throw error("quotient_module: map not injective");
    const LambdaModule& amb = mono.tgt;
    Matrix reps = quotient_basis(mono.mat, amb.dim);
    // [mono | reps] is an invertible change of basis; the projection is the
    // reps-block of its inverse.
    Matrix full = Matrix::hstack(mono.mat, reps);
    Matrix inv = inverse(full);
    Matrix proj = inv.rows_slice(mono.mat.cols(), full.cols());
    Matrix act = proj * amb.action * reps;
    LambdaModule q(reps.cols(), amb.n, std::move(act));
    QuotientResult out;
    out.projection = ModuleMap(amb, q, std::move(proj));
    out.module = std::move(q);
    out.reps = std::move(reps);
    return out;
}

KernelResult kernel_module(const ModuleMap& f) {
    const LambdaModule& a = f.src;
    Matrix K = kernel_basis(f.mat);
    // action restricted to the kernel in kernel coordinates
    auto s = solve_all(K, a.action * K);
    if (!s) throw error("kernel_module: kernel not action-stable (internal)");
    LambdaModule k((int)K.cols(), a.n, s->particular);
    KernelResult out;
    out.inclusion = ModuleMap(k, a, K);
    out.module = std::move(k);
    return out;
}

ModuleMap solve_through_epi(const ModuleMap& epi, const ModuleMap& f) {
    if (!(epi.src == f.src)) throw error("solve_through_epi: sources differ");
    auto s = solve_left(epi.mat, f.mat);
    if (!s) throw error("solve_through_epi: no solution");
    return ModuleMap(epi.tgt, f.tgt, s->particular);
}

Matrix top_functional_rows(const JordanData& jt, u32 p) {
    int r = (int)jt.parts.size();
    int dim = 0;
    for (int d : jt.parts) dim += d;
    Matrix eps(r, dim, p);
    int off = 0;
    for (int b = 0; b < r; ++b) {
        eps.at(b, off + jt.parts[b] - 1) = 1;
        off += jt.parts[b];
    }
    return eps;
}

Matrix functional_to_map(const Matrix& lambda, const LambdaModule& src, int n, u32 p) {
    int r = lambda.rows();
    Matrix phi(r * n, src.dim, p);
    std::vector<Matrix> powers;
    Matrix pow = Matrix::identity(src.dim, p);
    for (int e = 0; e < n; ++e) {
        powers.push_back(pow);
        pow = pow * src.action;
    }
    for (int b = 0; b < r; ++b)
        for (int i = 0; i < n; ++i) {
            const Matrix& pw = powers[n - 1 - i];
            for (int c = 0; c < src.dim; ++c) {
                u32 acc = 0;
                for (int t = 0; t < src.dim; ++t)
                    acc = fp::add(acc, fp::mul(lambda.at(b, t), pw.at(t, c), p), p);
                phi.at(b * n + i, c) = acc;
            }
        }
    return phi;
}

std::optional<ModuleMap> try_extend_along_mono(const ModuleMap& mono, const ModuleMap& f) {
    if (!(mono.src == f.src)) throw error("extend_along_mono: sources differ");
    const u32 p = f.mat.modulus();
    if (is_projective(f.tgt)) {
        // symmetric-algebra shortcut: extend the top-coefficient functional
        // k-linearly, then rebuild the Lambda-linear map
        JordanData jt = jordan_type(f.tgt);
        Matrix w_inv = jt.basis.rows() ? inverse(jt.basis) : Matrix(0, 0, p);
        Matrix eps = top_functional_rows(jt, p);
        Matrix lam_f = eps * (w_inv * f.mat); // r x dim(src)
        auto s = solve_left(mono.mat, lam_f);
        if (!s) return std::nullopt;
        Matrix phi = functional_to_map(s->particular, mono.tgt, (int)f.tgt.n, p);
        return ModuleMap(mono.tgt, f.tgt, jt.basis * phi);
    }
    auto s = solve_in_hom(mono.tgt, f.tgt, {{Matrix::identity(f.tgt.dim, p), mono.mat, f.mat}});
    if (!s) return std::nullopt;
    return s->particular;
}

ModuleMap extend_along_mono(const ModuleMap& mono, const ModuleMap& f) {
    auto s = try_extend_along_mono(mono, f);
    if (!s) throw error("extend_along_mono: no extension");
    return *s;
}

std::optional<ModuleMap> try_lift_through_epi(const ModuleMap& epi, const ModuleMap& g) {
    if (!(epi.tgt == g.tgt)) throw error("lift_through_epi: targets differ");
    const u32 p = epi.mat.modulus();
    if (is_projective(g.src)) {
        // lift the generator images through the epi, then extend freely
        JordanData js = jordan_type(g.src);
        Matrix w_inv = js.basis.rows() ? inverse(js.basis) : Matrix(0, 0, p);
        const int n = (int)g.src.n;
        int r = (int)js.parts.size();
        Matrix gens(g.src.dim, r, p);
        for (int b = 0; b < r; ++b) gens.at(b * n, b) = 1;
        Matrix images = g.mat * (js.basis * gens);
        auto v = solve_all(epi.mat, images);
        if (!v) return std::nullopt;
        // canonical free map: x^i e_b |-> action^i v_b
        Matrix lift(epi.src.dim, g.src.dim, p);
        Matrix pow = Matrix::identity(epi.src.dim, p);
        for (int i = 0; i < n; ++i) {
            Matrix cols = pow * v->particular;
            for (int b = 0; b < r; ++b)
                for (int t = 0; t < epi.src.dim; ++t) lift.at(t, b * n + i) = cols.at(t, b);
            pow = epi.src.action * pow;
        }
        return ModuleMap(g.src, epi.src, lift * w_inv);
    }
    auto s = solve_in_hom(g.src, epi.src, {{epi.mat, Matrix::identity(g.src.dim, p), g.mat}});
    if (!s) return std::nullopt;
    return s->particular;
}

ModuleMap lift_through_epi(const ModuleMap& epi, const ModuleMap& g) {
    auto s = try_lift_through_epi(epi, g);
    if (!s) throw error("lift_through_epi: no lift");
    return *s;
}

PushoutSquare pushout(const ModuleMap& i, const ModuleMap& f) {
    if (!(i.src == f.src)) throw error("pushout: shared corner mismatch");
    if (!i.is_mono()) throw error("pushout: first map must be an admissible monic");
    const LambdaModule &B = i.tgt, &C = f.tgt;

    PushoutSquare out;
    if (i.mat.is_identity()) {
        // pushout along an identity: far corner is C itself
        out.corner = C;
        out.from_B = ModuleMap(B, C, f.mat);
        out.from_C = ModuleMap::identity(C);
    } else {
        LambdaModule BC = direct_sum(B, C);
        ModuleMap stacked(i.src, BC, Matrix::vstack(i.mat, -f.mat));
        QuotientResult q = quotient_module(stacked);
        out.corner = q.module;
        out.from_B = compose(q.projection, inclusion_first(B, C));
        out.from_C = compose(q.projection, inclusion_second(B, C));
    }
    ModuleMap mono(i.src, direct_sum(B, C), Matrix::vstack(i.mat, -f.mat));
    ModuleMap epi(direct_sum(B, C), out.corner, Matrix::hstack(out.from_B.mat, out.from_C.mat));
    out.cert = ShortExactSeq(std::move(mono), std::move(epi));
    if (!out.from_C.is_mono()) throw error("pushout: parallel of a monic failed to be monic");
    return out;
}

PullbackSquare pullback(const ModuleMap& q, const ModuleMap& g) {
    if (!(q.tgt == g.tgt)) throw error("pullback: shared corner mismatch");
    if (!q.is_epi()) throw error("pullback: first map must be an admissible epic");
    const LambdaModule &B = q.src, &D = g.src;

    PullbackSquare out;
    if (q.mat.is_identity()) {
        out.corner = D;
        out.to_B = ModuleMap(D, B, g.mat);
        out.to_D = ModuleMap::identity(D);
    } else {
        Matrix joint = Matrix::hstack(q.mat, -g.mat); // B(+)D --> C
        Matrix K = kernel_basis(joint);
        LambdaModule BD = direct_sum(B, D);
        auto s = solve_all(K, BD.action * K);
        if (!s) throw error("pullback: kernel not action-stable (internal)");
        LambdaModule P((int)K.cols(), B.n, s->particular);
        ModuleMap incl(P, BD, K);
        out.corner = P;
        out.to_B = compose(projection_first(B, D), incl);
        out.to_D = compose(projection_second(B, D), incl);
    }
    ModuleMap mono(out.corner, direct_sum(B, D), Matrix::vstack(out.to_B.mat, out.to_D.mat));
    ModuleMap epi(direct_sum(B, D), q.tgt, Matrix::hstack(q.mat, -g.mat));
    out.cert = ShortExactSeq(std::move(mono), std::move(epi));
    if (!out.to_D.is_epi()) throw error("pullback: parallel of an epic failed to be epic");
    return out;
}

ShortExactSeq noether_complete(const NoetherGrid& g) {
    g.row1.validate();
    g.row2.validate();
    g.row3.validate();
    g.col1.validate();
    g.col2.validate();
    if (!(g.col1.mono.src == g.row1.mono.src) || !(g.col2.mono.src == g.row1.epi.src) ||
        !(g.col1.mono.tgt == g.row2.mono.src) || !(g.col2.mono.tgt == g.row2.epi.src) ||
        !(g.col1.epi.tgt == g.row3.mono.src) || !(g.col2.epi.tgt == g.row3.epi.src))
        throw error("noether_complete: grid objects do not match");
    if (!(compose(g.col2.mono, g.row1.mono) == compose(g.row2.mono, g.col1.mono)) ||
        !(compose(g.col2.epi, g.row2.mono) == compose(g.row3.mono, g.col1.epi)))
        throw error("noether_complete: given squares do not commute");

    // C' --> C is the unique map with m . row1.epi = row2.epi . col2.mono.
    ModuleMap m = solve_through_epi(g.row1.epi, compose(g.row2.epi, g.col2.mono));
    // C --> C'' is the unique map with e . row2.epi = row3.epi . col2.epi.
    ModuleMap e = solve_through_epi(g.row2.epi, compose(g.row3.epi, g.col2.epi));
    return ShortExactSeq(std::move(m), std::move(e));
}

std::vector<ModuleMap> hom_basis(const LambdaModule& m, const LambdaModule& t) {
    // Hom(k[x]/x^a, k[x]/x^b) is spanned by 1 |-> x^s for
    // s = max(0, b-a), ..., b-1; conjugate blockwise through the Jordan
    // witnesses of both sides.
    const u32 p = m.modulus();
    const int n = (int)m.n;
    JordanData jm = jordan_type(m), jt = jordan_type(t);
    Matrix m_inv = jm.basis.rows() ? inverse(jm.basis) : Matrix(0, 0, p);

    std::vector<ModuleMap> out;
    int toff = 0;
    for (std::size_t bt = 0; bt < jt.parts.size(); ++bt) {
        int b = jt.parts[bt];
        int soff = 0;
        for (std::size_t bs = 0; bs < jm.parts.size(); ++bs) {
            int a = jm.parts[bs];
            for (int s = std::max(0, b - a); s < b; ++s) {
                // canonical block map: x^i |-> x^{s+i}
                Matrix mat(t.dim, m.dim, p);
                for (int i = 0; i < a && s + i < b; ++i) mat.at(toff + s + i, soff + i) = 1;
                out.emplace_back(m, t, jt.basis * (mat * m_inv));
            }
            soff += a;
        }
        toff += b;
    }
    (void)n;
    return out;
}

std::optional<HomSolution> solve_in_hom(const LambdaModule& A, const LambdaModule& B,
                                        const std::vector<HomConstraint>& cs) {
    const u32 p = A.modulus();
    auto basis = hom_basis(A, B);
    int rows = 0;
    for (const auto& c : cs) rows += c.rhs.rows() * c.rhs.cols();
    Matrix sys(rows, (int)basis.size(), p);
    Matrix rhs(rows, 1, p);
    int r0 = 0;
    for (const auto& c : cs) {
        for (int j = 0; j < (int)basis.size(); ++j) {
            Matrix v = (c.left * basis[j].mat * c.right).vec();
            for (int i = 0; i < v.rows(); ++i) sys.at(r0 + i, j) = v.at(i, 0);
        }
        Matrix v = c.rhs.vec();
        for (int i = 0; i < v.rows(); ++i) rhs.at(r0 + i, 0) = v.at(i, 0);
        r0 += c.rhs.rows() * c.rhs.cols();
    }
    auto s = solve_all(sys, rhs);
    if (!s) return std::nullopt;
    auto assemble = [&](const Matrix& coeffs, int col) {
        Matrix acc = Matrix::zero(B.dim, A.dim, p);
        for (int j = 0; j < (int)basis.size(); ++j) {
            u32 c = coeffs.at(j, col);
            if (c) acc = acc + basis[j].mat.scaled(c);
        }
        return ModuleMap(A, B, acc);
    };
    HomSolution out;
    out.particular = assemble(s->particular, 0);
    for (int k = 0; k < s->kernel.cols(); ++k) out.kernel.push_back(assemble(s->kernel, k));
    return out;
}

std::optional<ModuleMap> find_retraction(const ModuleMap& mono) {
    return try_extend_along_mono(mono, ModuleMap::identity(mono.src));
}

std::optional<ModuleMap> find_section(const ModuleMap& epi) {
    return try_lift_through_epi(epi, ModuleMap::identity(epi.tgt));
}

StableModuleHom stable_hom_basis(const LambdaModule& m, const LambdaModule& t) {
    const u32 p = m.modulus();
    StableModuleHom out;
    out.full = hom_basis(m, t);
    ModuleMap p_t = projective_cover(t);
    Matrix cur(t.dim * m.dim, 0, p);
    for (const auto& g : hom_basis(m, p_t.src)) {
        ModuleMap comp = compose(p_t, g);
        Matrix cand = Matrix::hstack(cur, comp.mat.vec());
        if (cand.rank() > cur.cols()) {
            out.factoring.push_back(comp);
            cur = std::move(cand);
        }
    }
    for (const auto& f : out.full) {
        Matrix cand = Matrix::hstack(cur, f.mat.vec());
        if (cand.rank() > cur.cols()) {
            out.stable_basis.push_back(f);
            cur = std::move(cand);
        }
    }
    out.reduction = std::move(cur);
    return out;
}

Matrix StableModuleHom::class_coords(const ModuleMap& f) const {
    auto s = solve_all(reduction, f.mat.vec());
    if (!s) throw error("StableModuleHom::class_coords: map not in the hom space");
    Matrix coords((int)stable_basis.size(), 1, reduction.modulus());
    int off = (int)factoring.size();
    for (int i = 0; i < coords.rows(); ++i) coords.at(i, 0) = s->particular.at(off + i, 0);
    return coords;
}

bool is_stably_zero_map(const ModuleMap& f) {
    ModuleMap i = injective_hull(f.src);
    const u32 p = f.mat.modulus();
    return solve_in_hom(i.tgt, f.tgt, {{Matrix::identity(f.tgt.dim, p), i.mat, f.mat}})
        .has_value();
}

LambdaModule cone_module(const ModuleMap& f) {
    ModuleMap i = injective_hull(f.src);
    return pushout(i, f).corner;
}

bool is_stable_iso_base(const ModuleMap& f) { return is_projective(cone_module(f)); }

} // namespace frobmor
