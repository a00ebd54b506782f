#pragma once

#include "gossip/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gossip {

// Multiplicative constants for the asymptotic expressions. None of them is
// dictated by theory; they are calibrated once by pilot runs and recorded in
// every report.
struct BoundsConstants {
    double c_regular = 1.0;  // D^2 * delta * ln(delta) coefficient
    double c_general = 1.0;  // delta_max * ln(delta_max) * (e_max - 1)^D coefficient
    double c_sqrt = 1.0;     // sqrt(T_i) term in the regular recursion
    double c_cc = 1.0;       // coupon-collector delta * ln(delta) term
};

// Expected rounds for push completion on the complete graph of n nodes:
// log2(n) + ln(n), with the additive constant taken as zero. Requires n >= 2.
double push_complete_estimate(std::size_t n);

// Pull upper bound for regular graphs: c * D^2 * degree * ln(degree).
// Requires D >= 1, degree >= 2, c > 0.
double pull_regular_upper(std::size_t diameter, std::size_t degree, double c);

// Pull upper bound for general graphs:
// c * max_degree * ln(max_degree) * (e_max - 1)^D, evaluated as written, so it
// collapses to zero at e_max == 1 and is non-increasing in D for e_max <= 2;
// reports flag that regime as degenerate. Requires max_degree >= 2, e_max >= 1,
// D >= 1.
double pull_general_upper(std::size_t max_degree, double e_max, std::size_t diameter, double c);

// Asymptotic floor for buffered pull on a chain of d delta-stars: delta^d.
struct StarChainLower {
    double value = 0.0;
    bool huge = false;  // overflowed doubles; value is meaningless
};
StarChainLower star_chain_lower(std::size_t delta, std::size_t d);

// Per-layer expected-time recursion. Starting from t1 > 0 it iterates
//   regular branch (e_max == 1): T' = T + c_sqrt*sqrt(T) + c_cc*dm*ln(dm)
//   general branch (e_max > 1):  T' = T*(e_max - 1) + c_cc*dm*ln(dm)
// and returns the profile T_1..T_D. e_max < 1 is rejected: no graph has one.
std::vector<double> pull_recursion(double t1, std::size_t diameter, std::size_t max_degree,
                                   double e_max, double c_sqrt, double c_cc);

struct BoundsReport {
    std::string graph_id;
    std::size_t nodes = 0;
    std::size_t diameter = 0;
    std::size_t max_degree = 0;
    bool regular = false;
    double e_max = 0.0;
    std::string e_max_exact;  // "num/den"

    std::optional<double> push_estimate;       // absent when n < 2
    std::optional<double> pull_regular_bound;  // absent unless regular with degree >= 2
    std::optional<double> pull_general_bound;  // absent when max_degree < 2
    bool general_degenerate = false;           // e_max <= 2: (e_max-1)^D does not grow
    std::optional<double> star_chain_floor;    // only when star-chain shape params given
    bool star_chain_floor_huge = false;
    std::vector<double> recursion_profile;
    BoundsConstants constants_used;
};

// Evaluates every applicable bound for the graph. star_chain_shape, when
// present, is the (d, delta) pair used for the floor marker.
BoundsReport evaluate_bounds(const Graph& g, const std::string& graph_id,
                             const BoundsConstants& constants,
                             std::optional<std::pair<std::size_t, std::size_t>> star_chain_shape);

std::string to_json_string(const BoundsReport& report);
std::string to_table_string(const BoundsReport& report);

}  // namespace gossip
