#include <functional>

#include "thinlie/maxclass.hpp"

namespace thinlie::maxclass {

namespace detail {
JacobiReport validate_from(const Presentation& pres, const AdjointModel& model, int from);
}

std::vector<AdjointPair> projective_pairs(const ExtField& field) {
  std::vector<AdjointPair> out;
  for (const auto& b : field.elements()) out.push_back({field.one(), b});
  out.push_back({field.zero(), field.one()});
  return out;
}

std::vector<Presentation> search_sequences(const ExtField& field, int class_n, std::size_t limit,
                                           SearchOptions options) {
  if (class_n < 4) throw Error(ErrorCode::BadBound, "class must be at least 4");
  if (class_n > options.soft_limit && !options.force)
    throw Error(ErrorCode::WindowTooLarge, "class " + std::to_string(class_n) + " exceeds the soft limit " +
                                               std::to_string(options.soft_limit));
  const auto all = projective_pairs(field);
  const AdjointPair metabelian{field.one(), field.zero()};
  const AdjointPair ex{field.zero(), field.one()};

  std::vector<Presentation> found;
  std::vector<AdjointPair> prefix;
  if (limit == 0) return found;

  // prefix holds pairs for degrees 2 .. prefix.size() + 1, i.e. a class
  // prefix.size() + 2 truncation whose lower degrees were already checked.
  std::function<void(bool)> dfs = [&](bool deviated) {
    const int current = static_cast<int>(prefix.size()) + 2;
    if (current >= 4) {
      Presentation pres(field, current, prefix);
      auto model = AdjointModel::build(pres);
      if (!detail::validate_from(pres, model, current).ok) return;
    }
    if (current == class_n) {
      found.emplace_back(field, class_n, prefix);
      return;
    }
    // Standard form: C_2 = Ey, and the first centralizer other than Ey is Ex.
    std::vector<AdjointPair> candidates;
    if (prefix.empty())
      candidates = {metabelian};
    else if (!deviated)
      candidates = {metabelian, ex};
    else
      candidates = all;
    for (const auto& c : candidates) {
      prefix.push_back(c);
      dfs(deviated || !(c == metabelian));
      prefix.pop_back();
      if (found.size() >= limit) return;
    }
  };
  dfs(false);
  return found;
}

}  // namespace thinlie::maxclass
