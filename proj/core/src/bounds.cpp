#include "gossip/bounds.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gossip {

double push_complete_estimate(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("push_complete_estimate: n must be >= 2");
    }
    const double x = static_cast<double>(n);
    return std::log2(x) + std::log(x);
}

double pull_regular_upper(std::size_t diameter, std::size_t degree, double c) {
    if (diameter < 1) {
        throw std::invalid_argument("pull_regular_upper: diameter must be >= 1");
    }
    if (degree < 2) {
        throw std::invalid_argument("pull_regular_upper: degree must be >= 2");
    }
    if (!(c > 0)) {
        throw std::invalid_argument("pull_regular_upper: c must be > 0");
    }
    const double d = static_cast<double>(diameter);
    const double deg = static_cast<double>(degree);
    return c * d * d * deg * std::log(deg);
}

double pull_general_upper(std::size_t max_degree, double e_max, std::size_t diameter, double c) {
    if (max_degree < 2) {
        throw std::invalid_argument("pull_general_upper: max_degree must be >= 2");
    }
    if (e_max < 1.0) {
        throw std::invalid_argument("pull_general_upper: e_max must be >= 1");
    }
    if (diameter < 1) {
        throw std::invalid_argument("pull_general_upper: diameter must be >= 1");
    }
    const double dm = static_cast<double>(max_degree);
    return c * dm * std::log(dm) * std::pow(e_max - 1.0, static_cast<double>(diameter));
}

StarChainLower star_chain_lower(std::size_t delta, std::size_t d) {
    if (delta < 1) {
        throw std::invalid_argument("star_chain_lower: delta must be >= 1");
    }
    if (d < 1) {
        throw std::invalid_argument("star_chain_lower: d must be >= 1");
    }
    StarChainLower out;
    out.value = std::pow(static_cast<double>(delta), static_cast<double>(d));
    if (!std::isfinite(out.value)) {
        out.huge = true;
        out.value = std::numeric_limits<double>::max();
    }
    return out;
}

std::vector<double> pull_recursion(double t1, std::size_t diameter, std::size_t max_degree,
                                   double e_max, double c_sqrt, double c_cc) {
    if (!(t1 > 0)) {
        throw std::invalid_argument("pull_recursion: t1 must be > 0");
    }
    if (diameter < 1) {
        throw std::invalid_argument("pull_recursion: diameter must be >= 1");
    }
    if (e_max < 1.0) {
        throw std::invalid_argument("pull_recursion: e_max must be >= 1");
    }
    const double dm = static_cast<double>(max_degree);
    const double coupon = c_cc * dm * (dm >= 2.0 ? std::log(dm) : 0.0);
    std::vector<double> profile;
    profile.reserve(diameter);
    double t = t1;
    profile.push_back(t);
    for (std::size_t i = 1; i < diameter; ++i) {
        if (e_max == 1.0) {
            t = t + c_sqrt * std::sqrt(t) + coupon;
        } else {
            t = t * (e_max - 1.0) + coupon;
        }
        profile.push_back(t);
    }
    return profile;
}

BoundsReport evaluate_bounds(const Graph& g, const std::string& graph_id,
                             const BoundsConstants& constants,
                             std::optional<std::pair<std::size_t, std::size_t>> star_chain_shape) {
    BoundsReport report;
    report.graph_id = graph_id;
    report.nodes = g.node_count();
    report.diameter = diameter(g);
    report.max_degree = g.max_degree();
    report.regular = g.is_regular();
    report.constants_used = constants;

    if (g.node_count() >= 2) {
        const LoadProfile profile = load_profile(g);
        report.e_max = to_double(profile.max_load);
        // Branch selection below compares against 1 exactly; make sure a load
        // strictly above 1 cannot round down onto the regular branch.
        if (profile.max_load > Rational(1) && report.e_max <= 1.0) {
            report.e_max = std::nextafter(1.0, 2.0);
        }
        report.e_max_exact = to_string(profile.max_load);
        report.push_estimate = push_complete_estimate(g.node_count());

        if (report.regular && report.max_degree >= 2 && report.diameter >= 1) {
            report.pull_regular_bound =
                pull_regular_upper(report.diameter, report.max_degree, constants.c_regular);
        }
        if (report.max_degree >= 2 && report.diameter >= 1) {
            report.pull_general_bound = pull_general_upper(report.max_degree, report.e_max,
                                                           report.diameter, constants.c_general);
            report.general_degenerate = report.e_max <= 2.0;
        }
        if (report.diameter >= 1) {
            const double dm = static_cast<double>(report.max_degree);
            const double t1 =
                constants.c_cc * dm * (report.max_degree >= 2 ? std::log(dm) : 1.0);
            report.recursion_profile =
                pull_recursion(t1, report.diameter, report.max_degree, report.e_max,
                               constants.c_sqrt, constants.c_cc);
        }
    }
    if (star_chain_shape) {
        const auto [d, delta] = *star_chain_shape;
        const StarChainLower lower = star_chain_lower(delta, d);
        report.star_chain_floor = lower.value;
        report.star_chain_floor_huge = lower.huge;
    }
    return report;
}

namespace {

using ordered_json = nlohmann::ordered_json;

void put_optional(ordered_json& out, const char* key, const std::optional<double>& value) {
    if (value) {
        out[key] = *value;
    } else {
        out[key] = nullptr;
    }
}

}  // namespace

std::string to_json_string(const BoundsReport& report) {
    ordered_json out;
    out["graph"] = report.graph_id;
    out["nodes"] = report.nodes;
    out["diameter"] = report.diameter;
    out["max_degree"] = report.max_degree;
    out["regular"] = report.regular;
    out["e_max"] = report.e_max;
    out["e_max_exact"] = report.e_max_exact;
    put_optional(out, "push_complete_estimate", report.push_estimate);
    put_optional(out, "pull_regular_upper", report.pull_regular_bound);
    put_optional(out, "pull_general_upper", report.pull_general_bound);
    out["general_degenerate"] = report.general_degenerate;
    put_optional(out, "star_chain_lower", report.star_chain_floor);
    out["star_chain_lower_huge"] = report.star_chain_floor_huge;
    out["recursion_profile"] = report.recursion_profile;
    ordered_json constants;
    constants["c_regular"] = report.constants_used.c_regular;
    constants["c_general"] = report.constants_used.c_general;
    constants["c_sqrt"] = report.constants_used.c_sqrt;
    constants["c_cc"] = report.constants_used.c_cc;
    out["constants_used"] = std::move(constants);
    return out.dump(2);
}

std::string to_table_string(const BoundsReport& report) {
    std::ostringstream out;
    const auto line = [&out](const std::string& key, const std::string& value) {
        out << "  " << key;
        for (std::size_t i = key.size(); i < 28; ++i) {
            out << ' ';
        }
        out << value << '\n';
    };
    const auto num = [](double v) {
        std::ostringstream s;
        s << v;
        return s.str();
    };
    out << "bounds report: " << report.graph_id << '\n';
    line("nodes", std::to_string(report.nodes));
    line("diameter", std::to_string(report.diameter));
    line("max degree", std::to_string(report.max_degree));
    line("regular", report.regular ? "yes" : "no");
    line("E_max", num(report.e_max) + "  (" + report.e_max_exact + ")");
    line("push complete estimate",
         report.push_estimate ? num(*report.push_estimate) : "n/a");
    line("pull regular upper",
         report.pull_regular_bound ? num(*report.pull_regular_bound) : "n/a");
    std::string general =
        report.pull_general_bound ? num(*report.pull_general_bound) : "n/a";
    if (report.general_degenerate) {
        general += "  (degenerate: E_max <= 2)";
    }
    line("pull general upper", general);
    if (report.star_chain_floor) {
        line("star chain floor",
             report.star_chain_floor_huge ? "overflow" : num(*report.star_chain_floor));
    }
    if (!report.recursion_profile.empty()) {
        std::ostringstream prof;
        for (std::size_t i = 0; i < report.recursion_profile.size(); ++i) {
            if (i > 0) {
                prof << ", ";
            }
            prof << num(report.recursion_profile[i]);
        }
        line("recursion profile T_1..T_D", prof.str());
    }
    line("constants", "c_regular=" + num(report.constants_used.c_regular) +
                          " c_general=" + num(report.constants_used.c_general) +
                          " c_sqrt=" + num(report.constants_used.c_sqrt) +
                          " c_cc=" + num(report.constants_used.c_cc));
    return out.str();
}

}  // namespace gossip
