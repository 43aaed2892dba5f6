#include "msgpass/answer.hpp"

namespace msgpass {

namespace {
struct JsonVisitor {
  nlohmann::json operator()(const std::monostate&) const { return nullptr; }
  nlohmann::json operator()(const CountAnswer& a) const {
    return nlohmann::json{{"count", a.value}};
  }
  nlohmann::json operator()(const ArgMaxAnswer& a) const {
    return nlohmann::json{{"argmax", {a.element, a.frequency}}};
  }
  nlohmann::json operator()(const DegreeAnswer& a) const {
    return nlohmann::json{{"degree", a.value}};
  }
  nlohmann::json operator()(const BoolAnswer& a) const { return nlohmann::json{{"bool", a.value}}; }
  nlohmann::json operator()(const CcCountAnswer& a) const {
    return nlohmann::json{{"cc", a.value}};
  }
  nlohmann::json operator()(const DiameterAnswer& a) const {
    nlohmann::json j;
    if (a.value) {
      j["diameter"] = *a.value;
    } else {
      j["diameter"] = "inf";
    }
    j["spanner_edges"] = a.spanner.size();
    return j;
  }
  nlohmann::json operator()(const ElementSetAnswer& a) const {
    return nlohmann::json{{"elements", a.elements}};
  }
  nlohmann::json operator()(const BfsAnswer& a) const {
    return nlohmann::json{{"bfs",
                           {{"root", a.root},
                            {"parent", a.parent},
                            {"layer", a.layer},
                            {"odd_cycle_found", a.odd_cycle_found}}}};
  }
};
}  // namespace

nlohmann::json answer_to_json(const Answer& a) { return std::visit(JsonVisitor{}, a); }

std::string answer_to_string(const Answer& a) { return answer_to_json(a).dump(); }

}  // namespace msgpass
