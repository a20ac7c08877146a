#pragma once

#include "frobmor/chain.hpp"

#include <optional>

namespace frobmor {

// vec of a chain map: concatenated row-major component entries.
Matrix chain_vec(const ChainMap& f);

// Hom space of the stable category: a basis of Hom(X, Y) together with a
// basis of the subspace of maps factoring through projectives (computed
// through the projective cover of the target) and a fixed complement.
struct StableHomSpace {
    ChainObject src, tgt;
    std::vector<ChainMap> full;
    std::vector<ChainMap> factoring;
    std::vector<ChainMap> stable_basis; // complement representatives

    int stable_dim() const { return (int)stable_basis.size(); }
    // coordinates of the stable class of f against stable_basis
    Matrix class_coords(const ChainMap& f) const;
    bool stably_zero(const ChainMap& f) const { return class_coords(f).is_zero(); }

    Matrix reduction; // [vec factoring | vec stable_basis], column-stacked
};
StableHomSpace stable_hom(const ChainObject& x, const ChainObject& y);

// f factors through the envelope of its source (equivalently, through some
// projective chain).
bool is_stably_zero_map(const ChainMap& f);
bool stably_equal(const ChainMap& f, const ChainMap& g);

// ---- suspension ----------------------------------------------------------

struct SigmaResult {
    ChainObject object;
    ChainSES ses; // X >--> I(X) -->> Sigma X  (resp. Sigma^{-1} >--> P -->> X)
};
SigmaResult sigma_chain(const ChainObject& x);
SigmaResult sigma_inv_chain(const ChainObject& x);
// Sigma on morphisms via envelope extension (deterministic choice).
ChainMap sigma_map(const ChainMap& f);

// ---- cones -----------------------------------------------------------------

struct ConeResult {
    ChainObject cone;
    ChainMap into;      // Y >--> C
    ChainMap from_hull; // I(X) --> C
    ChainMap to_sigma;  // C -->> Sigma X
    ChainSES cert;      // X >--(i,-f)--> I(X) (+) Y -->> C
    SigmaResult sigma_src;
};
ConeResult cone(const ChainMap& f);

struct CoconeResult {
    ChainObject cocone;
    ChainMap from;           // C* -->> X
    ChainMap to_cover;       // C* --> P(Y)
    ChainMap from_sigma_inv; // Sigma^{-1} Y >--> C*
    ChainSES cert;           // C* >--> P(Y) (+) X -->> Y
    SigmaResult sigma_inv_tgt;
};
CoconeResult cocone(const ChainMap& f);

inline bool is_stably_zero(const ChainObject& x) { return is_projective_chain(x); }
bool is_stable_iso(const ChainMap& f);

// ---- triangles ---------------------------------------------------------------

struct MembershipTag {
    enum Kind { None, Gamma, Delta } kind = None;
    int s = 0, t = 0;
    std::optional<ChainObject> delta_witness; // constructive Delta membership
};

// A distinguished triangle U --> X --> V carried with an explicit witness:
// either a termwise SES, or a comparison with the canonical (co)cone of one
// of its maps that is certified to be a stable isomorphism.
struct TriangleCertificate {
    ChainObject left, middle, right;
    ChainMap f_left;  // U --> X
    ChainMap f_right; // X --> V
    enum Witness { SES, ConeCompare, CoconeCompare } witness = SES;
    std::optional<ChainSES> ses;
    std::optional<ChainMap> connecting; // V --> Sigma U for the SES case
    std::optional<ConeResult> cone_data;
    std::optional<CoconeResult> cocone_data;
    std::optional<ChainMap> compare; // C(f_left) --> right resp. left --> C*(f_right)
    MembershipTag left_tag, right_tag;
};

// Throws on any failure; membership tags are not checked here (the functor
// layer owns that).
void verify_triangle(const TriangleCertificate& t);

TriangleCertificate ses_to_triangle(const ChainSES& s);
// Triangle with witness = comparison of right with the cone of f_left
// (requires f_right . f_left stably zero).
TriangleCertificate triangle_from_cone(const ChainMap& u, const ChainMap& m);
// Triangle with witness = comparison of left with the cocone of f_right.
TriangleCertificate triangle_from_cocone(const ChainMap& u, const ChainMap& m);

// ---- stable solving ------------------------------------------------------------

// theta : X --> A with u . theta stably equal to m (u : A --> B, m : X --> B).
struct StableFactor {
    ChainMap map;
    bool unique; // stable class unique
};
std::optional<StableFactor> stable_factor_through(const ChainMap& u, const ChainMap& m);

// Unique stable fill-ins between two triangles over a middle map; throws
// "no fill-in" / "not unique" on precondition violations.
struct FillIns {
    ChainMap left, right;
};
FillIns unique_fill_in(const TriangleCertificate& top, const TriangleCertificate& bottom,
                       const ChainMap& f);

} // namespace frobmor
