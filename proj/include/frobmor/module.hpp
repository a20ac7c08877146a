#pragma once

#include "frobmor/matrix.hpp"

#include <vector>

namespace frobmor {

// A finite-dimensional module over Lambda = k[x]/(x^n), given by the
// nilpotent "multiplication by x" endomorphism. Modules are plain values;
// two modules are the same object iff dim, n and the action matrix agree
// bit for bit. All later constructions thread exact module values, so
// equality checks are meaningful.
struct LambdaModule {
    int dim = 0;
    u32 n = 2;
    Matrix action; // dim x dim, action^n = 0

    LambdaModule() = default;
    LambdaModule(int d, u32 nn, Matrix act);

    u32 modulus() const { return action.modulus(); }
    bool operator==(const LambdaModule& o) const {
        return dim == o.dim && n == o.n && action == o.action;
    }
    bool operator!=(const LambdaModule& o) const { return !(*this == o); }

    static LambdaModule zero(u32 n, u32 p);
    // Canonical indecomposable k[x]/(x^d): basis 1, x, ..., x^{d-1}, the
    // action is the subdiagonal shift.
    static LambdaModule jordan(int d, u32 n, u32 p);
    // Canonical module of a given Jordan type (parts sorted descending).
    static LambdaModule of_type(const std::vector<int>& parts, u32 n, u32 p);
};

struct ModuleMap {
    LambdaModule src, tgt;
    Matrix mat; // tgt.dim x src.dim

    ModuleMap() = default;
    ModuleMap(LambdaModule s, LambdaModule t, Matrix m);

    static ModuleMap identity(const LambdaModule& m);
    static ModuleMap zero(const LambdaModule& s, const LambdaModule& t);

    bool is_mono() const { return mat.rank() == src.dim; }
    bool is_epi() const { return mat.rank() == tgt.dim; }
    bool is_zero() const { return mat.is_zero(); }
    bool operator==(const ModuleMap& o) const {
        return src == o.src && tgt == o.tgt && mat == o.mat;
    }
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f); // g after f
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);

struct ShortExactSeq {
    ModuleMap mono; // A >--> B
    ModuleMap epi;  // B -->> C

    ShortExactSeq() = default;
    ShortExactSeq(ModuleMap m, ModuleMap e, bool validate = true);
    void validate() const; // mono injective, epi surjective, im = ker, composable
};

LambdaModule direct_sum(const LambdaModule& a, const LambdaModule& b);
// Block-diagonal sum of maps.
ModuleMap direct_sum_map(const ModuleMap& f, const ModuleMap& g);
ModuleMap inclusion_first(const LambdaModule& a, const LambdaModule& b);   // a -> a(+)b
ModuleMap inclusion_second(const LambdaModule& a, const LambdaModule& b);  // b -> a(+)b
ModuleMap projection_first(const LambdaModule& a, const LambdaModule& b);  // a(+)b -> a
ModuleMap projection_second(const LambdaModule& a, const LambdaModule& b); // a(+)b -> b

// ---- Jordan structure ----------------------------------------------------

struct JordanData {
    std::vector<int> parts; // descending block sizes, each <= n
    Matrix basis;           // iso of_type(parts) -> M (columns = chain vectors)
    LambdaModule canonical;
};

// Deterministic Jordan decomposition: block counts from ranks of action
// powers, chain tops by greedy pivot completion in fixed order.
JordanData jordan_type(const LambdaModule& m);

bool is_projective(const LambdaModule& m);

// Canonical injective hull M >--> I(M): identity when M is free, otherwise
// the blockwise socle embedding x^(n-d) in Jordan coordinates.
ModuleMap injective_hull(const LambdaModule& m);
// Canonical projective cover P(M) -->> M, dually (blockwise truncation).
ModuleMap projective_cover(const LambdaModule& m);

struct SuspendResult {
    LambdaModule module;
    ShortExactSeq ses; // M >--> I(M) -->> Sigma M   (resp. Omega >--> P -->> M)
};
SuspendResult suspend(const LambdaModule& m); // Sigma = coker i_M
SuspendResult loop(const LambdaModule& m);    // Sigma^{-1} = ker p_M

// ---- kernels, cokernels, squares ------------------------------------------

struct QuotientResult {
    LambdaModule module;  // cokernel on coset representatives
    ModuleMap projection; // tgt(mono) -->> coker
    Matrix reps;          // representative columns in tgt(mono)
};
QuotientResult quotient_module(const ModuleMap& mono);

struct KernelResult {
    LambdaModule module;
    ModuleMap inclusion; // ker >--> src(f)
};
KernelResult kernel_module(const ModuleMap& f);

// Unique h with h . epi = f (epi surjective). Lambda-linearity is inherited.
ModuleMap solve_through_epi(const ModuleMap& epi, const ModuleMap& f);
// Some h with h . mono = f. When tgt(f) is projective this avoids hom-basis
// enumeration entirely (top-coefficient correspondence of the symmetric
// algebra); otherwise it solves in hom coordinates.
std::optional<ModuleMap> try_extend_along_mono(const ModuleMap& mono, const ModuleMap& f);
ModuleMap extend_along_mono(const ModuleMap& mono, const ModuleMap& f);
// Some h with epi . h = g; fast path when src(g) is projective.
std::optional<ModuleMap> try_lift_through_epi(const ModuleMap& epi, const ModuleMap& g);
ModuleMap lift_through_epi(const ModuleMap& epi, const ModuleMap& g);

struct PushoutSquare {
    // i : A >--> B, f : A --> C, corner D with legs making the square
    // commute; cert is the sequence A >--(i,-f)--> B(+)C -->> D.
    LambdaModule corner;
    ModuleMap from_B; // B --> D, parallel of f
    ModuleMap from_C; // C --> D, parallel of i (monic)
    ShortExactSeq cert;
};
PushoutSquare pushout(const ModuleMap& i, const ModuleMap& f);

struct PullbackSquare {
    // q : B -->> C, g : D --> C, corner P with legs to B and D;
    // cert is P >--> B(+)D --(q,-g)--> C.
    LambdaModule corner;
    ModuleMap to_B; // P --> B, parallel of g
    ModuleMap to_D; // P -->> D, parallel of q (epic)
    ShortExactSeq cert;
};
PullbackSquare pullback(const ModuleMap& q, const ModuleMap& g);

// ---- Noether lemma ---------------------------------------------------------

struct NoetherGrid {
    // Three exact rows (A' B' C'), (A B C), (A'' B'' C'') and exact first
    // two columns; the completing third column is computed.
    ShortExactSeq row1, row2, row3;
    ShortExactSeq col1, col2; // A' >--> A -->> A'' and B' >--> B -->> B''
};
// The unique completing column C' >--> C -->> C'' with commuting squares.
ShortExactSeq noether_complete(const NoetherGrid& g);

// ---- hom spaces ------------------------------------------------------------

// Basis of Hom_Lambda(m, t) in closed form: blockwise shift maps between
// Jordan blocks, conjugated through the Jordan witnesses. Deterministic
// order (target block, source block, shift).
std::vector<ModuleMap> hom_basis(const LambdaModule& m, const LambdaModule& t);

// Solve for f in Hom(A, B) subject to constraints left * f * right = rhs,
// working in hom-basis coordinates. Returns particular + kernel elements.
struct HomConstraint {
    Matrix left, right, rhs;
};
struct HomSolution {
    ModuleMap particular;
    std::vector<ModuleMap> kernel;
};
std::optional<HomSolution> solve_in_hom(const LambdaModule& A, const LambdaModule& B,
                                        const std::vector<HomConstraint>& cs);

// Lambda-linear retraction of a monic / section of an epic, if one exists.
std::optional<ModuleMap> find_retraction(const ModuleMap& mono);
std::optional<ModuleMap> find_section(const ModuleMap& epi);

// Symmetric-algebra correspondence Hom_Lambda(M, T) <-> Hom_k(M, k^r) for
// projective T in canonical coordinates: the functional picks the top
// x^{n-1}-coefficients per block, and functional_to_map rebuilds the
// Lambda-linear map phi(m) = sum_i lambda(action^{n-1-i} m) x^i.
Matrix top_functional_rows(const JordanData& jt, u32 p);
Matrix functional_to_map(const Matrix& lambda, const LambdaModule& src, int n, u32 p);

struct StableModuleHom {
    std::vector<ModuleMap> full;         // basis of Hom(M, M')
    std::vector<ModuleMap> factoring;    // basis of the through-projectives subspace
    std::vector<ModuleMap> stable_basis; // fixed complement representatives
    Matrix reduction;                    // [vec factoring | vec stable_basis]

    int stable_dim() const { return (int)stable_basis.size(); }
    // coordinates of the stable class of f against stable_basis
    Matrix class_coords(const ModuleMap& f) const;
};
// Factoring subspace = image of composition with the projective cover of
// the target.
StableModuleHom stable_hom_basis(const LambdaModule& m, const LambdaModule& t);

// f is a stable zero iff it factors through the canonical hull of its
// source; equivalently lies in the span of the factoring subspace.
bool is_stably_zero_map(const ModuleMap& f);

// Cone of a base morphism (pushout of i_src along f) and the stable-iso
// test via cone projectivity.
LambdaModule cone_module(const ModuleMap& f);
bool is_stable_iso_base(const ModuleMap& f);

} // namespace frobmor
