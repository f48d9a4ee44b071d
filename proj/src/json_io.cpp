#include "xpr/json_io.hpp"

#include <fstream>
#include <sstream>

#include "xpr/errors.hpp"

namespace xpr::io {

json to_json(const BigReal& x) { return x.to_string(); }

BigReal bigreal_from_json(const json& j, mpfr_prec_t default_bits) {
  if (j.is_string()) return BigReal::from_string(j.get<std::string>(), default_bits);
  if (j.is_number_integer()) return BigReal(j.get<long>(), default_bits);
  if (j.is_number_float()) return BigReal(j.get<double>(), default_bits);
  throw UsageError("expected a number or \"<decimal>@<bits>\" string, got " + j.dump());
}

json to_json(const BigComplex& z) { return json{{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

BigComplex bigcomplex_from_json(const json& j, mpfr_prec_t default_bits) {
  if (j.is_object()) {
    BigReal re = j.contains("re") ? bigreal_from_json(j.at("re"), default_bits)
                                  : BigReal(0L, default_bits);
    BigReal im = j.contains("im") ? bigreal_from_json(j.at("im"), default_bits)
                                  : BigReal(0L, default_bits);
    return {re, im};
  }
  return BigComplex(bigreal_from_json(j, default_bits));
}

namespace {

json multipoly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const MultiTerm& t : p.terms) {
    terms.push_back(json{{"coeff", to_json(t.coeff)}, {"exp", t.exps}});
  }
  return json{{"nvars", p.nvars}, {"terms", terms}};
}

MultiPoly multipoly_from_json(const json& j) {
  MultiPoly p;
  p.nvars = j.at("nvars").get<unsigned>();
  for (const json& t : j.at("terms")) {
    MultiTerm term;
    term.coeff = bigcomplex_from_json(t.at("coeff"));
    term.exps = t.at("exp").get<std::vector<unsigned>>();
    if (term.exps.size() != p.nvars) throw UsageError("Q term exponent arity mismatch");
    p.terms.push_back(std::move(term));
  }
  return p;
}

}  // namespace

json to_json(const FamilyParams& p) {
  json params;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SingleSineParams>) {
          params = {{"c", to_json(v.c)}, {"omega", to_json(v.omega)}};
        } else if constexpr (std::is_same_v<T, SineSumParams>) {
          json waves = json::array();
          for (const Wave& w : v.waves) {
            waves.push_back(
                {{"c", to_json(w.c)}, {"omega", to_json(w.omega)}, {"h", to_json(w.h)}});
          }
          params = {{"waves", waves}};
        } else if constexpr (std::is_same_v<T, PolyExpAlgParams>) {
          json polys = json::array();
          for (const auto& poly : v.polys) {
            json coeffs = json::array();
            for (const BigComplex& c : poly) coeffs.push_back(to_json(c));
            polys.push_back(coeffs);
          }
          params = {{"polys", polys},
                    {"q_num", multipoly_to_json(v.q_num)},
                    {"q_den", multipoly_to_json(v.q_den)}};
        } else if constexpr (std::is_same_v<T, SigmaSineParams>) {
          json coeffs = json::array();
          for (const BigReal& c : v.poly_coeffs) coeffs.push_back(to_json(c));
          params = {{"sigma", sigma_name(v.sigma)}, {"c", to_json(v.c)},
                    {"omega", to_json(v.omega)},    {"b", to_json(v.b)},
                    {"h", to_json(v.h)},            {"poly_coeffs", coeffs}};
        } else {
          json waves = json::array();
          for (const Wave& w : v.inner.waves) {
            waves.push_back(
                {{"c", to_json(w.c)}, {"omega", to_json(w.omega)}, {"h", to_json(w.h)}});
          }
          params = {{"outer", {{"c", to_json(v.outer_c)}, {"h", to_json(v.outer_h)}}},
                    {"inner", {{"waves", waves}}}};
        }
      },
      p);
  return json{{"family", family_name(p)}, {"params", params}};
}

FamilyParams family_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  const json& params = j.at("params");
  if (family == "H1") {
    SingleSineParams p;
    p.c = bigreal_from_json(params.at("c"));
    p.omega = bigreal_from_json(params.at("omega"));
    return p;
  }
  if (family == "H2") {
    SineSumParams p;
    for (const json& w : params.at("waves")) {
      p.waves.push_back(Wave{bigreal_from_json(w.at("c")), bigreal_from_json(w.at("omega")),
                             bigreal_from_json(w.at("h"))});
    }
    return p;
  }
  if (family == "H3") {
    PolyExpAlgParams p;
    for (const json& poly : params.at("polys")) {
      std::vector<BigComplex> coeffs;
      for (const json& c : poly) coeffs.push_back(bigcomplex_from_json(c));
      p.polys.push_back(std::move(coeffs));
    }
    p.q_num = multipoly_from_json(params.at("q_num"));
    p.q_den = multipoly_from_json(params.at("q_den"));
    return p;
  }
  if (family == "Hsigma") {
    SigmaSineParams p;
    p.sigma = sigma_kind_from_name(params.at("sigma").get<std::string>());
    if (params.contains("poly_coeffs")) {
      for (const json& c : params.at("poly_coeffs")) p.poly_coeffs.push_back(bigreal_from_json(c));
    }
    p.c = bigreal_from_json(params.at("c"));
    p.omega = bigreal_from_json(params.at("omega"));
    p.b = bigreal_from_json(params.at("b"));
    p.h = bigreal_from_json(params.at("h"));
    return p;
  }
  if (family == "H5") {
    SineOfSineParams p;
    p.outer_c = bigreal_from_json(params.at("outer").at("c"));
    p.outer_h = bigreal_from_json(params.at("outer").at("h"));
    for (const json& w : params.at("inner").at("waves")) {
      p.inner.waves.push_back(Wave{bigreal_from_json(w.at("c")),
                                   bigreal_from_json(w.at("omega")),
                                   bigreal_from_json(w.at("h"))});
    }
    return p;
  }
  throw UsageError("unknown family: " + family);
}

json to_json(const SampleGrid& grid) {
  json values = json::array();
  for (const BigComplex& v : grid.values) {
    if (grid.real_valued) {
      values.push_back(to_json(v.re));
    } else {
      values.push_back(to_json(v));
    }
  }
  return json{{"a", to_json(grid.a)},
              {"h", to_json(grid.h)},
              {"m", grid.m},
              {"real", grid.real_valued},
              {"values", values}};
}

SampleGrid grid_from_json(const json& j) {
  SampleGrid g;
  g.a = bigreal_from_json(j.at("a"));
  g.h = bigreal_from_json(j.at("h"));
  g.m = j.at("m").get<long>();
  g.real_valued = j.value("real", true);
  for (const json& v : j.at("values")) {
    g.values.push_back(g.real_valued ? BigComplex(bigreal_from_json(v))
                                     : bigcomplex_from_json(v));
  }
  if (static_cast<long>(g.values.size()) != g.m + 1) {
    throw UsageError("grid values length must be m+1");
  }
  return g;
}

std::string grid_to_csv(const SampleGrid& grid) {
  std::ostringstream out;
  out << (grid.real_valued ? "index,x,value\n" : "index,x,value,value_im\n");
  for (long k = 0; k <= grid.m; ++k) {
    out << k << "," << grid.x_at(k).to_string() << "," << grid.value(k).re.to_string();
    if (!grid.real_valued) out << "," << grid.value(k).im.to_string();
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SampleGrid grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("empty CSV");
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "index" || header[1] != "x") {
    throw UsageError("expected CSV header index,x,value[,value_im]");
  }
  const bool complex_grid = header.size() > 3;
  std::vector<BigReal> xs;
  std::vector<BigComplex> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < 3) throw UsageError("short CSV row: " + line);
    xs.push_back(BigReal::from_string(cells[1]));
    BigReal re = BigReal::from_string(cells[2]);
    BigReal im = complex_grid && cells.size() > 3 ? BigReal::from_string(cells[3])
                                                  : BigReal(0L, re.bits());
    values.push_back(BigComplex(re, im));
  }
  if (xs.size() < 2) throw UsageError("CSV grid needs at least 2 rows");
  SampleGrid g;
  g.a = xs.front();
  g.h = xs[1] - xs[0];
  g.m = static_cast<long>(xs.size()) - 1;
  g.real_valued = !complex_grid;
  g.values = std::move(values);
  return g;
}

json to_json(const Certificate& c) {
  return json{{"kind", certificate_kind_name(c.kind)},
              {"residual", to_json(c.residual)},
              {"tolerance", to_json(c.tolerance)},
              {"pass", c.pass},
              {"metadata", c.metadata}};
}

json to_json(const NetworkGraph& net) {
  json nodes = json::array();
  for (const Node& n : net.nodes) {
    json inputs = json::array();
    for (const Edge& e : n.inputs) inputs.push_back({{"from", e.from}, {"w", to_json(e.w)}});
    json jn{{"id", n.id}, {"act", act_name(n.act)}, {"inputs", inputs},
            {"bias", to_json(n.bias)}};
    if (!n.act_param.is_zero()) jn["act_param"] = to_json(n.act_param);
    nodes.push_back(jn);
  }
  return json{{"nodes", nodes}, {"input", net.input_id}, {"output", net.output_id}};
}

NetworkGraph network_from_json(const json& j) {
  NetworkGraph net;
  net.input_id = j.at("input").get<int>();
  net.output_id = j.at("output").get<int>();
  for (const json& jn : j.at("nodes")) {
    Node n;
    n.id = jn.at("id").get<int>();
    n.act = act_from_name(jn.at("act").get<std::string>());
    n.bias = jn.contains("bias") ? bigreal_from_json(jn.at("bias")) : BigReal(0L);
    n.act_param = jn.contains("act_param") ? bigreal_from_json(jn.at("act_param")) : BigReal(0L);
    if (jn.contains("inputs")) {
      for (const json& e : jn.at("inputs")) {
        n.inputs.push_back(Edge{e.at("from").get<int>(), bigreal_from_json(e.at("w"))});
      }
    }
    net.nodes.push_back(std::move(n));
  }
  if (net.find(net.input_id) == nullptr) {
    net.nodes.push_back(Node{net.input_id, Act::input, BigReal(0L), {}, BigReal(0L)});
  }
  return net;
}

std::string series_to_csv(const std::vector<std::string>& header,
                          const std::vector<std::vector<BigReal>>& columns) {
  if (!columns.empty()) {
    for (const auto& col : columns) {
      if (col.size() != columns[0].size()) {
        throw DomainError("series_to_csv: columns must have equal length");
      }
    }
  }
  if (header.size() != columns.size()) {
    throw DomainError("series_to_csv: header arity mismatch");
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i][r].to_string();
    }
    out << "\n";
  }
  return out.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace xpr::io
