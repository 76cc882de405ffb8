#pragma once

#include "json.hpp"

#include "maxrep/chains.hpp"
#include "maxrep/shilov.hpp"
#include "maxrep/toledo.hpp"

namespace maxrep {

using json = nlohmann::json;

json form_to_json(const IndefiniteForm& form);
IndefiniteForm form_from_json(const json& j);

// row-major 64-bit floats with a {"p","q","field"} header; complex entries as
// [re, im] pairs
json matrix_to_json(const IndefiniteForm& form, const MatrixXd& m);
json matrix_to_json(const IndefiniteForm& form, const MatrixXcd& m);
MatrixXd matrix_from_json(const json& j);
MatrixXcd cmatrix_from_json(const json& j);

json vector_to_json(const IndefiniteForm& form, const VectorXd& v);
VectorXd vector_from_json(const json& j);

json certificate_to_json(const PingPongCertificate& c);
PingPongCertificate certificate_from_json(const json& j);

json witness_to_json(const PingPongWitness& w);
PingPongWitness witness_from_json(const json& j);

json toledo_to_json(const ToledoResult& r, const FixedLineResult* fixed = nullptr);

json nesting_to_json(const NestingReport& r);

}  // namespace maxrep
