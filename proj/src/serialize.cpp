#include "racelab/serialize.hpp"

#include <iomanip>
#include <sstream>

#include "racelab/error.hpp"

namespace racelab {

using nlohmann::json;

json zeros_to_json(const ZeroSystem& B) {
  json zs = json::array();
  for (const auto& e : B.entries())
    zs.push_back({{"chi", e.label},
                  {"chi_k", B.character(e.label).k()},
                  {"beta", e.beta},
                  {"gamma", e.gamma},
                  {"mult", e.mult},
                  {"k", e.k}});
  return {{"q", B.q()},
          {"kind", B.kind() == ZeroSystem::Kind::hypothetical ? "hypothetical" : "observed"},
          {"base_gamma", B.base_gamma()},
          {"size", B.size()},
          {"zeros", zs}};
}

ZeroSystem zeros_from_json(const json& j) {
  auto G = std::make_shared<const ResidueGroup>(j.at("q").get<int>());
  std::vector<ZeroEntry> entries;
  for (const auto& z : j.at("zeros")) {
    ZeroEntry e;
    e.label = z.at("chi").get<int>();
    if (z.contains("chi_k")) {
      DirichletCharacter chi(G, z.at("chi_k").get<std::vector<int>>());
      if (chi.label() != e.label) throw Error(Errc::invalid_input, "character label and exponents differ");
    }
    e.beta = z.at("beta").get<double>();
    e.gamma = z.at("gamma").get<double>();
    e.mult = z.value("mult", 1);
    e.k = z.value("k", -1LL);
    entries.push_back(e);
  }
  const auto kind = j.value("kind", std::string("hypothetical")) == "observed"
                        ? ZeroSystem::Kind::observed
                        : ZeroSystem::Kind::hypothetical;
  return ZeroSystem(G, entries, kind, j.value("base_gamma", 0.0));
}

std::string zeros_to_text(const ZeroSystem& B) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& e : B.entries())
    out << "q=" << B.q() << " chi=" << e.label << " gamma=" << e.gamma << " beta=" << e.beta
        << " mult=" << e.mult << "\n";
  return out.str();
}

json recipe_to_json(const BarrierRecipe& r) {
  json j = {{"kind", recipe_kind_name(r.kind)},
            {"q", r.q},
            {"params", r.params},
            {"a", r.a},
            {"b", r.b},
            {"n", r.n},
            {"D", r.D},
            {"betas", r.betas},
            {"claim", r.claim}};
  if (r.B) j["system"] = zeros_to_json(*r.B);
  return j;
}

BarrierRecipe recipe_from_json(const json& j) {
  BarrierRecipe r;
  r.kind = recipe_kind_from_name(j.at("kind").get<std::string>());
  r.q = j.at("q").get<int>();
  r.params = j.value("params", std::map<std::string, double>{});
  r.a = j.value("a", 0LL);
  r.b = j.value("b", 0LL);
  r.n = j.value("n", 0);
  r.D = j.value("D", std::vector<long long>{});
  r.betas = j.value("betas", std::vector<double>{});
  r.claim = j.value("claim", std::string());
  if (j.contains("system")) {
    r.B.emplace(zeros_from_json(j.at("system")));
    if (r.B->q() != r.q) throw Error(Errc::recipe_mismatch, "system modulus differs from recipe");
  }
  return r;
}

json census_to_json(const Census& c, const std::vector<long long>& members) {
  json list = json::array();
  for (const auto& s : c.orderings)
    list.push_back({{"ordering", ordering_string(s.order, members)},
                    {"first_u", s.first_u},
                    {"last_u", s.last_u},
                    {"samples", s.samples}});
  return {{"members", members},
          {"census", c.size()},
          {"weak_orderings", c.weak_orderings},
          {"orderings", list}};
}

json verdict_to_json(const Verdict& v) {
  return {{"holds", v.holds}, {"census", v.census}, {"bound", v.bound}, {"detail", v.detail}};
}

std::string trace_to_csv(const OrderingTrace& t) {
  std::ostringstream out;
  out << std::setprecision(12) << "u";
  for (long long m : t.members) out << ",a" << m;
  out << "\n";
  for (Eigen::Index i = 0; i < t.values.rows(); ++i) {
    out << t.u[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < t.values.cols(); ++k) out << ',' << t.values(i, k);
    out << "\n";
  }
  return out.str();
}

}  // namespace racelab
