#pragma once

#include "frobmor/module.hpp"

#include <vector>

namespace frobmor {

// An object of mMor_l: a chain X^0 >--> X^1 >--> ... >--> X^l of injective
// module maps. Monicity of every structure map is a constructor invariant,
// not a latent state.
struct ChainObject {
    std::vector<LambdaModule> terms; // l+1 modules
    std::vector<ModuleMap> maps;     // l maps, maps[k] : X^k >--> X^{k+1}

    ChainObject() = default;
    ChainObject(std::vector<LambdaModule> t, std::vector<ModuleMap> m);

    int length() const { return (int)maps.size(); } // the l in mMor_l
    u32 n() const { return terms.at(0).n; }
    u32 modulus() const { return terms.at(0).modulus(); }
    int total_dim() const {
        int s = 0;
        for (auto& t : terms) s += t.dim;
        return s;
    }
    bool operator==(const ChainObject& o) const { return terms == o.terms && maps == o.maps; }
    bool operator!=(const ChainObject& o) const { return !(*this == o); }

    static ChainObject zero(int l, u32 n, u32 p);
    static ChainObject constant(int l, const LambdaModule& a); // A = A = ... = A
};

// mu_nn(A): 0 = ... = 0 >--> A = ... = A with A in the last nn slots.
ChainObject mu(int nn, const LambdaModule& a, int l);

struct ChainMap {
    ChainObject src, tgt;
    std::vector<ModuleMap> comps;

    ChainMap() = default;
    ChainMap(ChainObject s, ChainObject t, std::vector<ModuleMap> c);

    static ChainMap identity(const ChainObject& x);
    static ChainMap zero(const ChainObject& s, const ChainObject& t);

    bool is_mono() const;
    bool is_epi() const;
    bool is_zero() const {
        for (auto& c : comps)
            if (!c.is_zero()) return false;
        return true;
    }
    bool operator==(const ChainMap& o) const {
        return src == o.src && tgt == o.tgt && comps == o.comps;
    }
};

ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap add(const ChainMap& a, const ChainMap& b);
ChainMap sub(const ChainMap& a, const ChainMap& b);
ChainMap scale(const ChainMap& a, u32 c);

struct ChainSES {
    ChainMap mono, epi;
    ChainSES() = default;
    ChainSES(ChainMap m, ChainMap e, bool check = true);
    void validate() const; // termwise short exact at every index
};

ChainObject direct_sum(const ChainObject& a, const ChainObject& b);
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);
ChainMap chain_inclusion_first(const ChainObject& a, const ChainObject& b);
ChainMap chain_inclusion_second(const ChainObject& a, const ChainObject& b);
ChainMap chain_projection_first(const ChainObject& a, const ChainObject& b);
ChainMap chain_projection_second(const ChainObject& a, const ChainObject& b);

// Projective = injective in mMor_l(F): every term free and every structure
// map a split mono. The retraction search is kept as a verification even
// though monos out of free modules always split here.
bool is_projective_chain(const ChainObject& x);
inline bool is_injective_chain(const ChainObject& x) { return is_projective_chain(x); }

// ---- envelopes and covers ---------------------------------------------------

struct ChainEnvelope {
    ChainObject hull;     // injective chain I
    ChainMap embed;       // X >--> I, termwise monic
    ChainObject cokernel; // Y with induced (monic) structure maps
    ChainSES ses;         // X >--> I -->> Y
};
// Canonical envelope via the staircase of pushouts; identity when X is
// already injective.
ChainEnvelope chain_injective_envelope(const ChainObject& x);

struct ChainCover {
    ChainObject cover;  // P = (+)_k mu_{l-k+1}(P(X^k))
    ChainMap project;   // P -->> X
    ChainObject kernel; // with induced maps
    ChainSES ses;       // ker >--> P -->> X
};
ChainCover chain_projective_cover(const ChainObject& x);

// ---- hom spaces --------------------------------------------------------------

std::vector<ChainMap> chain_hom_basis(const ChainObject& a, const ChainObject& b);

// Constrained chain-map solver working in per-term hom-basis coordinates
// (the closed-form bases keep the systems small). The unknown is a chain
// map f : A --> B; constraints equate pre/post compositions of f, plus an
// optional linear combination of fixed maps with shared scalar unknowns,
// to a fixed map.
class ChainMapSolver {
public:
    ChainMapSolver(const ChainObject& a, const ChainObject& b);

    int add_scalar(); // returns scalar unknown index

    struct ScalarTerm {
        int scalar;
        ChainMap map;
    };
    // post . f + sum c_i G_i = rhs  (post : B -> T, rhs, G_i : A -> T)
    void require_post(const ChainMap& post, const ChainMap& rhs,
                      std::vector<ScalarTerm> extra = {});
    // f . pre + sum c_i G_i = rhs   (pre : S -> A, rhs, G_i : S -> B)
    void require_pre(const ChainMap& pre, const ChainMap& rhs, std::vector<ScalarTerm> extra = {});

    struct Result {
        ChainMap particular;
        std::vector<u32> scalars;
        struct KernelElem {
            ChainMap map;
            std::vector<u32> scalars;
        };
        std::vector<KernelElem> kernel;
    };
    std::optional<Result> solve() const;

    const std::vector<std::vector<ModuleMap>>& term_bases() const { return bases_; }

private:
    struct Constraint {
        bool post;
        ChainMap fixed;
        ChainMap rhs;
        std::vector<ScalarTerm> extra;
    };
    ChainObject a_, b_;
    std::vector<std::vector<ModuleMap>> bases_; // per-term hom bases
    std::vector<int> offsets_;
    int lambda_dim_ = 0;
    int scalars_ = 0;
    std::vector<Constraint> constraints_;
};

// Extension phi with phi . mono = f into an injective chain, computed by
// peeling constant summands off the target; each peel is a handful of
// plain solves, so this stays fast on large hull chains.
ChainMap chain_extend_into_injective(const ChainMap& mono, const ChainMap& f);

// ---- squares (termwise) ------------------------------------------------------

struct ChainPushout {
    ChainObject corner;
    ChainMap from_B, from_C;
    ChainSES cert; // A >--(i,-f)--> B (+) C -->> corner
};
ChainPushout chain_pushout(const ChainMap& i, const ChainMap& f);

struct ChainPullback {
    ChainObject corner;
    ChainMap to_B, to_D;
    ChainSES cert;
};
ChainPullback chain_pullback(const ChainMap& q, const ChainMap& g);

// ---- lemma-level constructions ----------------------------------------------

// Extend a left inverse at index 0 of a termwise monic s : I >--> X with I
// injective to a chain retraction r with r s = id (inductive lifting).
ChainMap extend_left_inverse(const ChainMap& s, const ModuleMap& r0);

// Termwise split X (every alpha^k split mono) decomposes against the
// constant chain on X^0: returns the SES  (0, Xt^1, ..., Xt^l) >--> X -->>
// (X^0 = ... = X^0)  with Xt^k = coker(alpha^{k-1}...alpha^0).
ChainSES split_off_equalities(const ChainObject& x);

// Composite of a split SES with a further quotient (epi_comp):
// A (+) A' >--(i, j i')--> B -->> D for any section j of the split epi.
ChainSES epi_comp(const ChainSES& split, const ChainSES& ses, const ChainMap& section);

// The two quasi-isomorphisms of a chain that is injective outside [s,t]:
// first the quotient p : X -->> Xt onto the canonical-shaped chain, then
// the reverse section i : Xt >--> X; both returned with their SESs.
struct GammaSplit {
    ChainObject reduced; // Xt of shape 0,...,0, Xt^s,...,Xt^t, Xt^{t+1} = ... = Xt^{t+1}
    ChainSES quotient;   // (J (+) Jt) >--> X -->> Xt  with projective kernel
    ChainSES section;    // Xt >--> X -->> (J (+) Jt)
};
GammaSplit gamma_split(const ChainObject& x, int s, int t);

// ---- helpers used across the triangulated layer ------------------------------

// Unique chain map h with h . epi = f.
ChainMap chain_solve_through_epi(const ChainMap& epi, const ChainMap& f);
// Chain map h with h . mono = f (exists when tgt(f) is an injective chain
// or f factors); deterministic particular solution, throws otherwise.
ChainMap chain_extend_along_mono(const ChainMap& mono, const ChainMap& f);
// Chain map h with epi . h = f (exists e.g. when src(f) is projective).
ChainMap chain_lift_through_epi(const ChainMap& epi, const ChainMap& f);

// Quotient chain of a termwise monic chain map: cokernels with induced
// structure maps (which must again be monic), plus the SES.
struct ChainQuotient {
    ChainObject quotient;
    ChainMap projection;
    ChainSES ses;
};
ChainQuotient chain_quotient(const ChainMap& mono);

// Kernel chain of a termwise epic chain map, with inclusion and SES.
struct ChainKernel {
    ChainObject kernel;
    ChainMap inclusion;
    ChainSES ses;
};
ChainKernel chain_kernel(const ChainMap& epi);

} // namespace frobmor
