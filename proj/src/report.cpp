#include "clsi/report.hpp"

namespace clsi {

nlohmann::json to_json(const PropertyReport& r) {
  return nlohmann::json{
      {"property", r.property}, {"samples", r.samples}, {"worst_margin", r.worst_margin}, {"verdict", r.verdict}};
}

}  // namespace clsi
