#pragma once

#include "frobmor/functors.hpp"

#include <string>

namespace frobmor {

// Representability datum: rep together with a functional on the stable hom
// space Hom(obj, rep) whose induced pairings Hom(B, rep) x Hom(obj, B) -> k
// are perfect. In the concrete category rep is realized as the syzygy for
// the base data and transported through pushout squares above that.
struct DualityDatum {
    LambdaModule obj, rep;
    StableModuleHom hom; // Hom(obj, rep) with factoring subspace
    Matrix functional;   // 1 x stable_dim coefficient row

    u32 evaluate(const ModuleMap& f) const;
};

// rep = loop(obj); the functional is found by a deterministic search over
// the stable dual space, checked perfect against all n indecomposables.
// Throws if no functional over F_p works (never silently passes).
DualityDatum base_duality_datum(const LambdaModule& a);

// perfect-pairing test of a datum against a fixed test module
bool pairing_perfect_against(const DualityDatum& d, const LambdaModule& b);

// The unique stable morphism ft with e_A(- . f) = e_B(ft . -); uniqueness
// is asserted (kernel stably zero).
ModuleMap induced_dual_morphism(const ModuleMap& f, const DualityDatum& dA,
                                const DualityDatum& dB);

// ---- grids ------------------------------------------------------------------------

// Quotient grid (rows = successive cokernels of the diagonal) and its dual
// (first row = base representing objects, lower rows by pushout along the
// canonical hulls of the diagonal). Every marked square carries an exact
// certificate; the representing candidate is the rightmost dual column.
struct RepGrid {
    int l = 0;
    // base grid, defined for 0 <= i <= j <= l
    std::vector<std::vector<LambdaModule>> cell;
    std::vector<std::vector<ModuleMap>> alpha; // cell[i][j] >--> cell[i][j+1]
    std::vector<std::vector<ModuleMap>> beta;  // cell[i][j] -->> cell[i+1][j]
    // dual grid
    std::vector<std::vector<LambdaModule>> dcell;
    std::vector<std::vector<ModuleMap>> dbeta;  // dcell[i][j] --> dcell[i][j+1]
    std::vector<std::vector<ModuleMap>> dalpha; // dcell[i][j] >--> dcell[i+1][j]
    std::vector<LambdaModule> hulls;            // I^j = dcell[j+1][j]
    std::vector<std::vector<DualityDatum>> datum;
    ChainObject rep; // rightmost dual column, monicity verified
    bool dual_built = false;
};

RepGrid build_quotient_grid(const ChainObject& x);
void build_dual_grid(RepGrid& g);
std::string grid_text(const RepGrid& g); // dims as text art

// One Bondal-Kapranov square step: given representability data for three
// corners of a certified square plus any datum for the fourth base corner,
// produce the datum on the constructed pushout corner. Also used
// internally by build_dual_grid.
struct LiftSquareInput {
    ModuleMap a, c, b, d;          // A -a-> B, A -c-> C, B -b-> D, C -d-> D
    ModuleMap ta, tc, tb, td;      // dual square At -ta-> Bt, At -tc-> Ct, ...
    const DualityDatum *dA, *dB, *dC;
    DualityDatum hatD;             // any datum for D (e.g. base_duality_datum)
};
DualityDatum lift_square(const LiftSquareInput& in);

// ---- chain level -------------------------------------------------------------------

struct ChainDualityDatum {
    ChainObject obj, rep;
    StableHomSpace hom;
    Matrix functional; // 1 x stable_dim

    u32 evaluate(const ChainMap& f) const;
};

// Builds the representing functional recursively: contract the last
// column/row of the grids, recurse, then glue one step through the two
// boundary triangles. The normalization identity holds by construction and
// is re-verified for a full basis by callers.
ChainDualityDatum bk_functional(const ChainObject& x, const RepGrid& g);

struct RepresentingReport {
    bool ok = true;
    int samples = 0;
    std::string failure;
};
// (a) equal stable-hom dimensions against y, (b) perfect pairing matrix.
bool verify_representing_against(const ChainDualityDatum& d, const ChainObject& y,
                                 std::string* why = nullptr);

} // namespace frobmor
