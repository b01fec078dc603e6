#ifndef WEYL_JSON_IO_HPP
#define WEYL_JSON_IO_HPP

#include "weyl/tensor.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace weyl {

/// Any tensor the JSON schema can carry:
/// {"n", "p", "q", "mode": "exact"|"float", "rank": 2|4,
///  "components": flat row-major, "num/den" strings in exact mode, numbers
///  in float mode}.
using TensorValue = std::variant<Bilinear<Rational>, Curv4<Rational>,
                                 Bilinear<double>, Curv4<double>>;

nlohmann::json tensor_to_json(const Bilinear<Rational>& t);
nlohmann::json tensor_to_json(const Curv4<Rational>& t);
nlohmann::json tensor_to_json(const Bilinear<double>& t);
nlohmann::json tensor_to_json(const Curv4<double>& t);

TensorValue tensor_from_json(const nlohmann::json& j);

TensorValue read_tensor_file(const std::string& path);
void write_tensor_file(const std::string& path, const TensorValue& value);

}  // namespace weyl

#endif
