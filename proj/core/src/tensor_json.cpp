#include "weyl/json_io.hpp"

#include "weyl/errors.hpp"

#include <fstream>

namespace weyl {

namespace {

nlohmann::json header(const Model& m, int rank) {
  nlohmann::json j;
  j["n"] = m.n();
  j["p"] = m.p();
  j["q"] = m.q();
  j["mode"] = m.mode() == ScalarMode::Exact ? "exact" : "float";
  j["rank"] = rank;
  return j;
}

template <class T>
nlohmann::json exact_components(const T& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : t.data()) arr.push_back(rational_to_string(v));
  return arr;
}

template <class T>
nlohmann::json float_components(const T& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : t.data()) arr.push_back(v);
  return arr;
}

struct Header {
  Model model;
  int rank;
};

Header parse_header(const nlohmann::json& j) {
  for (const char* key : {"n", "p", "q", "mode", "rank", "components"})
    if (!j.contains(key))
      throw ParseError(std::string("tensor json: missing field \"") + key + "\"");
  const std::string mode = j["mode"].get<std::string>();
  if (mode != "exact" && mode != "float")
    throw ParseError("tensor json: mode must be \"exact\" or \"float\"");
  const int rank = j["rank"].get<int>();
  if (rank != 2 && rank != 4) throw ParseError("tensor json: rank must be 2 or 4");
  return {Model(j["n"].get<int>(), j["p"].get<int>(), j["q"].get<int>(),
                mode == "exact" ? ScalarMode::Exact : ScalarMode::Float64),
          rank};
}

template <class T, class Convert>
T fill(const Model& m, const nlohmann::json& comps, std::size_t want, Convert conv) {
  if (!comps.is_array() || comps.size() != want)
    throw ParseError("tensor json: components must be a flat array of " +
                     std::to_string(want) + " entries");
  T t(m);
  std::size_t i = 0;
  for (const auto& c : comps) t.data()[i++] = conv(c);
  return t;
}

}  // namespace

nlohmann::json tensor_to_json(const Bilinear<Rational>& t) {
  nlohmann::json j = header(t.model(), 2);
  j["components"] = exact_components(t);
  return j;
}

nlohmann::json tensor_to_json(const Curv4<Rational>& t) {
  nlohmann::json j = header(t.model(), 4);
  j["components"] = exact_components(t);
  return j;
}

nlohmann::json tensor_to_json(const Bilinear<double>& t) {
  nlohmann::json j = header(t.model(), 2);
  j["components"] = float_components(t);
  return j;
}

nlohmann::json tensor_to_json(const Curv4<double>& t) {
  nlohmann::json j = header(t.model(), 4);
  j["components"] = float_components(t);
  return j;
}

TensorValue tensor_from_json(const nlohmann::json& j) {
  const Header h = parse_header(j);
  const std::size_t n = static_cast<std::size_t>(h.model.n());
  const std::size_t want = h.rank == 2 ? n * n : n * n * n * n;
  const auto& comps = j["components"];

  const auto as_rational = [](const nlohmann::json& c) {
    if (c.is_string()) return rational_from_string(c.get<std::string>());
    if (c.is_number_integer()) return Rational(c.get<long long>());
    throw ParseError("tensor json: exact components must be \"num/den\" strings");
  };
  const auto as_double = [](const nlohmann::json& c) {
    if (!c.is_number()) throw ParseError("tensor json: float components must be numbers");
    return c.get<double>();
  };

  if (h.model.mode() == ScalarMode::Exact) {
    if (h.rank == 2) return fill<Bilinear<Rational>>(h.model, comps, want, as_rational);
    return fill<Curv4<Rational>>(h.model, comps, want, as_rational);
  }
  if (h.rank == 2) return fill<Bilinear<double>>(h.model, comps, want, as_double);
  return fill<Curv4<double>>(h.model, comps, want, as_double);
}

TensorValue read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tensor file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid json in " + path + ": " + e.what());
  }
  return tensor_from_json(j);
}

void write_tensor_file(const std::string& path, const TensorValue& value) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open tensor file for writing: " + path);
  std::visit([&](const auto& t) { out << tensor_to_json(t).dump(2) << "\n"; }, value);
}

}  // namespace weyl
