#ifndef WIGNER_REPORT_HPP
#define WIGNER_REPORT_HPP

#include <json.hpp>

#include "wigner/asymptotic_rdm.hpp"
#include "wigner/entropy.hpp"
#include "wigner/finite_g.hpp"
#include "wigner/two_body.hpp"

namespace wigner {

inline void to_json(nlohmann::json& j, const EntropyReport& r)
{
    j = nlohmann::json{{"n", r.n},
                       {"d", r.d},
                       {"s_total_bits", r.s_total},
                       {"s_per_site", r.per_site_s},
                       {"linear_entropy", r.linear_entropy},
                       {"lambda0_sum", r.lambda0_sum}};
}

inline void from_json(const nlohmann::json& j, EntropyReport& r)
{
    j.at("n").get_to(r.n);
    j.at("d").get_to(r.d);
    j.at("s_total_bits").get_to(r.s_total);
    j.at("s_per_site").get_to(r.per_site_s);
    j.at("linear_entropy").get_to(r.linear_entropy);
    j.at("lambda0_sum").get_to(r.lambda0_sum);
}

inline void to_json(nlohmann::json& j, const GaussianKernel& k)
{
    j = nlohmann::json{{"site", k.site}, {"A", k.A}, {"a", k.a}, {"b", k.b}};
}

inline void to_json(nlohmann::json& j, const SchmidtSite& s)
{
    j = nlohmann::json{{"site", s.site},       {"A", s.A},           {"w", s.w},
                       {"y", s.y},             {"lambda0", s.lambda0}, {"site_trace", s.site_trace},
                       {"l_max", s.truncation()}};
}

inline void to_json(nlohmann::json& j, const OddSeries& s)
{
    j = nlohmann::json{{"n", s.n}, {"g", s.g_magic}, {"e_rel", s.e_rel}, {"coefficients", s.coeffs}};
}

} // namespace wigner

#endif // WIGNER_REPORT_HPP
