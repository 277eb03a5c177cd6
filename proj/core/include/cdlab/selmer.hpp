#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/gf3.hpp"
#include "cdlab/localcube.hpp"

namespace cdlab::selmer {

using std::int64_t;

enum class Side { mu3_side, hom_side, generic };

// mu3_side when -3d is a perfect square, hom_side when d is, generic else.
Side classify(int64_t d);

struct TwistParams {
    int64_t d = 0;
    int64_t n = 0;
    Side side = Side::generic;

    static TwistParams make(int64_t d, int64_t n);
};

// All p not dividing 6 with v_p(d n^2) not 0 mod 6, plus 2 and 3 always.
std::vector<int64_t> bad_primes(const TwistParams& t);

enum class CondKind { unramified, line, full, zero };

struct LocalCondition {
    int64_t p = 0;
    bool infinite = false;
    CondKind kind = CondKind::unramified;
    std::optional<arith::PAdicCubeClass> generator;  // present iff kind == line and the
                                                     // group is a rational cube-class group
    int dim_W = 0;
    std::vector<gf3::Vec> coords;  // span coordinates at p in {2,3} (internal frame)
};

enum class CurveSide { self_side, partner };

LocalCondition local_condition(const TwistParams& t, int64_t p, CurveSide side);
LocalCondition local_condition_infinity(const TwistParams& t, CurveSide side);

struct SelmerBasis {
    std::vector<std::string> ambient;   // generator labels
    gf3::Mat constraints;               // rows: local equations, cols: generators
    std::vector<gf3::Vec> kernel;       // basis of the Selmer group in generator exponents
    int dimension = 0;
    bool verified = false;              // every basis element re-checked place by place
};

// Selmer group of the sqrt(-3) isogeny out of the mu3-oriented curve of the
// pair (ambient: rational cube classes supported on the bad primes).
SelmerBasis selmer_group_mu3(const TwistParams& t);

// Same for the square-oriented curve (ambient: minus-part Eisenstein S-unit
// cube classes).
SelmerBasis selmer_group_hom(const TwistParams& t);

// e with T(E) = 3^e for the isogeny out of the curve described by t.
int tamagawa_exponent(const TwistParams& t);

bool greenberg_wiles_check(const TwistParams& t);

struct Rational {
    int64_t num = 0, den = 1;
};

// Exhaustive search for x^3 + y^3 = n over reduced fractions with common
// denominator bounded by height; exact verification before returning.
std::optional<std::pair<Rational, Rational>> point_search(int64_t n, int64_t height_bound);

// Global root number of y^2 = x^3 + d n^2 from the local tables.
int root_number(int64_t d, int64_t n);

struct DescentReport {
    TwistParams params;
    int dim_mu3 = 0;
    int dim_hom = 0;
    int tam_exponent = 0;  // oriented at the mu3-side curve
    int w = 0;
    int r3_lower = 0;
    int r3_upper = 0;
    bool parity_ok = false;
};

std::pair<int, int> r3_bounds(const TwistParams& t);

// Full pipeline: both Selmer groups, Tamagawa exponent with the
// Greenberg-Wiles certificate, root number with the parity certificate,
// r3 bounds.  Throws internal_error if any certificate fails.
DescentReport descent_report(int64_t d, int64_t n);

// Knobs threaded through from the CLI configuration.
struct DescentOptions {
    int point_search_height = 1000;
    int hensel_precision_extra = 10;
};
DescentReport descent_report(int64_t d, int64_t n, const DescentOptions& opt);

}  // namespace cdlab::selmer
