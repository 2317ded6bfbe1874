#include "sharbly/chain_io.hpp"

#include <fstream>

#include "json.hpp"

namespace sharbly {

using nlohmann::json;

std::string chain_to_json(const Chain& z) {
  json j;
  j["n"] = z.n;
  j["degree"] = z.degree;
  j["terms"] = json::array();
  for (const auto& [b, c] : z.terms) {
    json t;
    t["coeff"] = Rat(c).get_str();
    json cols = json::array();
    for (const Col& v : b.cols) {
      json col = json::array();
      for (const Int& x : v) col.push_back(x.get_str());
      cols.push_back(col);
    }
    t["cols"] = cols;
    j["terms"].push_back(t);
  }
  return j.dump(2);
}

Chain chain_from_json(const std::string& text) {
  json j = json::parse(text);
  Chain z;
  z.n = j.at("n").get<int>();
  z.degree = j.at("degree").get<int>();
  if (z.n < 1) throw SharblyError("chain file: n must be positive");
  if (z.degree < 0) throw SharblyError("chain file: degree must be nonnegative");
  for (const json& t : j.at("terms")) {
    Rat coeff;
    const json& cj = t.at("coeff");
    if (cj.is_string())
      coeff = Rat(cj.get<std::string>());
    else
      coeff = Rat(cj.get<long>());
    coeff.canonicalize();
    std::vector<Col> cols;
    for (const json& colj : t.at("cols")) {
      Col v;
      for (const json& x : colj) {
        if (x.is_string())
          v.push_back(Int(x.get<std::string>()));
        else
          v.push_back(Int(x.get<long>()));
      }
      cols.push_back(std::move(v));
    }
    if (static_cast<int>(cols.size()) != z.n + z.degree)
      throw SharblyError("chain file: term has wrong number of columns");
    Chain term = make_basic(z.n, cols);
    for (const auto& [b, c] : term.terms) z.add(b, coeff * c);
  }
  return z;
}

Chain load_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SharblyError("cannot open chain file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return chain_from_json(text);
}

void save_chain_file(const Chain& z, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SharblyError("cannot write chain file: " + path);
  out << chain_to_json(z) << "\n";
}

}  // namespace sharbly
