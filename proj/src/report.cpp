#include "kripkelab/report.hpp"

namespace kripkelab {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::vacuous: return "vacuous";
  }
  return "?";
}

CheckParameters parameters_of(const Universe& u, const std::vector<SetId>& pool) {
  return CheckParameters{u.poset().size(), u.rank_cutoff(), pool};
}

}  // namespace kripkelab
