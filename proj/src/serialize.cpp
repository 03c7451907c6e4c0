#include "sdisc/serialize.hpp"

namespace sdisc {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError("fixture: " + what); }

const json& require_field(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::pair<Space, Space> spaces_for_kind(const Space& full, const std::string& kind) {
  if (kind == "matrix" || kind == "group" || kind == "lie") return {full, full};
  if (kind == "disc_point") return {minus_part(full), rest_part(full)};
  fail("unknown kind '" + kind + "'");
}

}  // namespace

json to_json(const Grassmann& g) {
  json coeffs = json::object();
  for (uint32_t m = 0; m < g.mask_count(); ++m) {
    const Complex c = g.coeff(m);
    if (c == Complex(0)) continue;
    coeffs[std::to_string(m)] = json::array({c.real(), c.imag()});
  }
  return json{{"n", g.n_pairs()}, {"coeffs", std::move(coeffs)}};
}

Grassmann grassmann_from_json(const json& j) {
  const int n = require_field(j, "n").get<int>();
  if (n < 0 || n > kMaxGeneratorPairs) fail("n out of range");
  Grassmann g(n);
  for (const auto& [key, value] : require_field(j, "coeffs").items()) {
    uint32_t mask = 0;
    try {
      mask = uint32_t(std::stoul(key));
    } catch (const std::exception&) {
      fail("coefficient key '" + key + "' is not a mask");
    }
    if (mask >= g.mask_count()) fail("coefficient mask out of range");
    if (!value.is_array() || value.size() != 2) fail("coefficient must be [re, im]");
    g.set_coeff(mask, Complex(value[0].get<double>(), value[1].get<double>()));
  }
  return g;
}

json to_json(const SuperMatrix& m, const std::string& kind) {
  Space full{};
  if (kind == "disc_point")
    full = Space{m.rows().p_minus, m.cols().p_plus, m.cols().q};
  else
    full = m.rows();
  json entries = json::array();
  for (int i = 0; i < m.rows().dim(); ++i)
    for (int j = 0; j < m.cols().dim(); ++j) {
      if (max_abs_coeff(m.at(i, j)) == 0.0) continue;
      entries.push_back(json::array({i, j, to_json(m.at(i, j))}));
    }
  return json{{"shape",
               {{"p_minus", full.p_minus}, {"p_plus", full.p_plus}, {"q", full.q},
                {"n", m.n_pairs()}}},
              {"type", m.type() == MatType::Odd ? "odd" : "even"},
              {"kind", kind},
              {"entries", std::move(entries)}};
}

SuperMatrix supermatrix_from_json(const json& j, std::string* kind_out) {
  const json shape = require_field(j, "shape");
  const Space full{require_field(shape, "p_minus").get<int>(),
                   require_field(shape, "p_plus").get<int>(),
                   require_field(shape, "q").get<int>()};
  const int n = require_field(shape, "n").get<int>();
  if (full.p_minus < 0 || full.p_plus < 0 || full.q < 0) fail("negative dimension");
  const std::string kind = j.value("kind", "matrix");
  const std::string type = j.value("type", "even");
  const auto [rows, cols] = spaces_for_kind(full, kind);

  SuperMatrix m(rows, cols, n, type == "odd" ? MatType::Odd : MatType::Even);
  for (const json& e : require_field(j, "entries")) {
    if (!e.is_array() || e.size() != 3) fail("entry must be [row, col, element]");
    const int r = e[0].get<int>(), c = e[1].get<int>();
    if (r < 0 || r >= rows.dim() || c < 0 || c >= cols.dim())
      fail("entry index out of range");
    Grassmann g = grassmann_from_json(e[2]);
    if (g.n_pairs() != n) fail("entry n_pairs disagrees with the shape");
    m.at(r, c) = std::move(g);
  }
  if (kind_out) *kind_out = kind;
  return m;
}

json to_json(const DiscPoint& p) { return to_json(p.z(), "disc_point"); }

DiscPoint disc_point_from_json(const json& j) {
  std::string kind;
  SuperMatrix z = supermatrix_from_json(j, &kind);
  if (kind != "disc_point") fail("expected kind 'disc_point'");
  return disc_point_from_z(z);
}

json to_json(const GroupElement& g) { return to_json(g.m, "group"); }

GroupElement group_from_json(const json& j) {
  std::string kind;
  SuperMatrix m = supermatrix_from_json(j, &kind);
  if (kind != "group") fail("expected kind 'group'");
  if (!m.square()) fail("group element must be square");
  return {std::move(m)};
}

json to_json(const LieElement& u) { return to_json(u.m, "lie"); }

LieElement lie_from_json(const json& j) {
  std::string kind;
  SuperMatrix m = supermatrix_from_json(j, &kind);
  if (kind != "lie") fail("expected kind 'lie'");
  if (!m.square()) fail("lie element must be square");
  return {std::move(m)};
}

json section_to_json(const MonomialSection& s) {
  json terms = json::array();
  for (const Monomial& t : s.terms()) {
    json vars = json::array();
    for (const VarRef& v : t.vars)
      vars.push_back(json{{"block", v.theta ? "theta" : "w"},
                          {"row", v.row},
                          {"col", v.col},
                          {"power", v.power}});
    terms.push_back(json{{"coeff", json::array({t.coeff.real(), t.coeff.imag()})},
                         {"vars", std::move(vars)}});
  }
  return terms;
}

SectionPtr section_from_json(const json& j) {
  if (!j.is_array()) fail("section must be a list of monomials");
  std::vector<Monomial> terms;
  for (const json& t : j) {
    const json coeff = require_field(t, "coeff");
    if (!coeff.is_array() || coeff.size() != 2) fail("coeff must be [re, im]");
    Monomial m{Complex(coeff[0].get<double>(), coeff[1].get<double>()), {}};
    for (const json& v : require_field(t, "vars")) {
      const std::string block = require_field(v, "block").get<std::string>();
      if (block != "w" && block != "theta") fail("block must be 'w' or 'theta'");
      VarRef r;
      r.theta = block == "theta";
      r.row = require_field(v, "row").get<int>();
      r.col = require_field(v, "col").get<int>();
      r.power = v.value("power", 1);
      if (r.row < 0 || r.col < 0) fail("negative entry index");
      m.vars.push_back(r);
    }
    terms.push_back(std::move(m));
  }
  return monomial_section(std::move(terms));
}

}  // namespace sdisc
