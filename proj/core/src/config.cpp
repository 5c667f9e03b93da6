#include "wlp/config.hpp"

#include <string>

namespace wlp {

QuadPolicy parse_quad_policy(const std::string& text) {
    if (text == "adaptive") return QuadPolicy::adaptive();
    if (text.rfind("fixed:", 0) == 0) {
        try {
            std::size_t pos = 0;
            int k = std::stoi(text.substr(6), &pos);
            if (pos != text.size() - 6 || k < 1)
                throw ConfigError("quad: node count must be a positive integer in '" + text + "'");
            return QuadPolicy::fixed(k);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("quad: cannot parse node count in '" + text + "'");
        }
    }
    throw ConfigError("quad: expected 'adaptive' or 'fixed:<k>', got '" + text + "'");
}

void RunConfig::validate_counts() const {
    std::string bad;
    if (n_points < 1) bad += " n_points";
    if (hull_count < 1) bad += " hull_count";
    if (quad.method == QuadMethod::fixed && quad.fixed_nodes < 1) bad += " quad";
    if (!bad.empty()) throw ConfigError("invalid config fields:" + bad);
}

void RunConfig::validate_geometry() const {
    std::string bad;
    if (a_over_r.empty()) bad += " a_over_r(missing)";
    for (double a : a_over_r)
        if (!(a > 0.0)) {
            bad += " a_over_r";
            break;
        }
    for (double R : R_over_r)
        if (!(R >= 1.0)) {
            bad += " R_over_r";
            break;
        }
    if (R_over_r.empty() && !flat_head) bad += " R_over_r(missing,no-flat-head)";
    if (!bad.empty()) throw ConfigError("invalid config fields:" + bad);
}

}  // namespace wlp
