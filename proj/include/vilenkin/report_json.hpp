#pragma once

// JSON form of KernelReport; field names match the struct members.

#include <json.hpp>

#include "vilenkin/kernels.hpp"

namespace vilenkin {

inline void to_json(nlohmann::json& j, const KernelReport& r) {
  j = nlohmann::json{{"spec", r.spec},
                     {"statement", r.statement},
                     {"parameters", r.parameters},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"empirical_constant", r.empirical_constant},
                     {"pass", r.pass}};
}

inline void from_json(const nlohmann::json& j, KernelReport& r) {
  j.at("spec").get_to(r.spec);
  j.at("statement").get_to(r.statement);
  j.at("parameters").get_to(r.parameters);
  j.at("lhs").get_to(r.lhs);
  j.at("rhs").get_to(r.rhs);
  j.at("empirical_constant").get_to(r.empirical_constant);
  j.at("pass").get_to(r.pass);
}

}  // namespace vilenkin
