#include "pawspec/json_io.hpp"

#include <stdexcept>
#include <string>

namespace pawspec {

nlohmann::json to_json(const TreePA& y)
{
  nlohmann::json j;
  j["d"] = y.degree();
  j["n"] = y.level();
  if (y.level() == 0)
    return j;
  j["top"] = y.top().arrows(";");
  nlohmann::json children = nlohmann::json::object();
  for (int x : y.top().domain())
    children[std::to_string(x)] = to_json(y.child(x));
  j["children"] = std::move(children);
  return j;
}

TreePA tree_from_json(const nlohmann::json& j)
{
  try {
    const int d = j.at("d").get<int>();
    const int n = j.at("n").get<int>();
    if (d < 1 || n < 0)
      throw std::invalid_argument("element JSON needs d >= 1 and n >= 0");
    if (n == 0) {
      if (j.contains("top") || j.contains("children"))
        throw std::invalid_argument("level-0 element carries no top or children");
      return TreePA::root(d);
    }
    auto top = parse_arrows(d, j.at("top").get<std::string>());
    const auto& kids = j.contains("children") ? j.at("children") : nlohmann::json::object();
    if (!kids.is_object())
      throw std::invalid_argument("'children' must be an object");
    if (kids.size() != static_cast<std::size_t>(top.rank()))
      throw std::invalid_argument("children keys must equal dom(top)");
    if (top.rank() == 0)
      return TreePA::empty(d, n);
    std::map<int, TreePA> children;
    for (const auto& [key, value] : kids.items()) {
      std::size_t used = 0;
      const int x = std::stoi(key, &used);
      if (used != key.size())
        throw std::invalid_argument("child key '" + key + "' is not an integer");
      auto child = tree_from_json(value);
      if (child.level() != n - 1 || child.degree() != d)
        throw std::invalid_argument("child " + key + " has the wrong shape");
      children.emplace(x, std::move(child));
    }
    return TreePA::node(std::move(top), children);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed element JSON: ") + e.what());
  }
}

nlohmann::json to_json(const SpectralSummary& s)
{
  return nlohmann::json{{"dim", s.dim}, {"zero_mult", s.zero_mult}, {"cycles", s.cycle_lengths}};
}

} // namespace pawspec
