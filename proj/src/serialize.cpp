#include "maxrep/serialize.hpp"

namespace maxrep {

json form_to_json(const IndefiniteForm& form) {
  return json{{"p", form.p()},
              {"q", form.q()},
              {"field", form.field() == Field::Real ? "real" : "complex"}};
}

IndefiniteForm form_from_json(const json& j) {
  const std::string f = j.value("field", "real");
  return IndefiniteForm(j.at("p").get<int>(), j.at("q").get<int>(),
                        f == "complex" ? Field::Complex : Field::Real);
}

json matrix_to_json(const IndefiniteForm& form, const MatrixXd& m) {
  json j = form_to_json(form);
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  j["data"] = std::move(data);
  return j;
}

json matrix_to_json(const IndefiniteForm& form, const MatrixXcd& m) {
  json j = form_to_json(form);
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  j["data"] = std::move(data);
  return j;
}

MatrixXd matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw DimensionMismatch("matrix_from_json: data size mismatch");
  MatrixXd m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[k++].get<double>();
  return m;
}

MatrixXcd cmatrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw DimensionMismatch("cmatrix_from_json: data size mismatch");
  MatrixXcd m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = std::complex<double>(data[k][0].get<double>(), data[k][1].get<double>());
      ++k;
    }
  return m;
}

json vector_to_json(const IndefiniteForm& form, const VectorXd& v) {
  json j = form_to_json(form);
  j["rows"] = v.size();
  j["cols"] = 1;
  j["data"] = std::vector<double>(v.data(), v.data() + v.size());
  return j;
}

VectorXd vector_from_json(const json& j) {
  const MatrixXd m = matrix_from_json(j);
  return VectorXd(m.col(0));
}

json certificate_to_json(const PingPongCertificate& c) {
  json conts = json::array();
  for (const auto& r : c.containments)
    conts.push_back(json{{"name", r.name},
                         {"min_margin", r.min_margin},
                         {"samples", r.samples},
                         {"failures", r.failures}});
  return json{{"pass", c.pass},
              {"tuple_margin", c.tuple_margin},
              {"containments", conts},
              {"algebra_dim", c.algebra_dim},
              {"power", c.power},
              {"samples", c.samples},
              {"seed", c.seed}};
}

PingPongCertificate certificate_from_json(const json& j) {
  PingPongCertificate c;
  c.pass = j.at("pass").get<bool>();
  c.tuple_margin = j.at("tuple_margin").get<double>();
  c.algebra_dim = j.at("algebra_dim").get<int>();
  c.power = j.at("power").get<int>();
  c.samples = j.at("samples").get<long>();
  c.seed = j.at("seed").get<std::uint64_t>();
  int k = 0;
  for (const auto& r : j.at("containments")) {
    ContainmentReport rep;
    rep.name = r.at("name").get<std::string>();
    rep.min_margin = r.at("min_margin").get<double>();
    rep.samples = r.at("samples").get<long>();
    rep.failures = r.at("failures").get<long>();
    c.containments[k++] = rep;
  }
  return c;
}

json witness_to_json(const PingPongWitness& w) {
  return json{{"version", 1},
              {"form", form_to_json(w.form)},
              {"A", matrix_to_json(w.form, w.A.matrix())},
              {"B", matrix_to_json(w.form, w.B.matrix())},
              {"x", vector_to_json(w.form, w.x.rep())},
              {"y", vector_to_json(w.form, w.y.rep())},
              {"z", vector_to_json(w.form, w.z.rep())},
              {"t", vector_to_json(w.form, w.t.rep())},
              {"certificate", certificate_to_json(w.certificate)}};
}

PingPongWitness witness_from_json(const json& j) {
  const IndefiniteForm form = form_from_json(j.at("form"));
  PingPongWitness w{form,
                    check_group_membership(form, matrix_from_json(j.at("A")), 1e-6),
                    check_group_membership(form, matrix_from_json(j.at("B")), 1e-6),
                    IsotropicLine(form, vector_from_json(j.at("x"))),
                    IsotropicLine(form, vector_from_json(j.at("y"))),
                    IsotropicLine(form, vector_from_json(j.at("z"))),
                    IsotropicLine(form, vector_from_json(j.at("t"))),
                    certificate_from_json(j.at("certificate"))};
  return w;
}

json nesting_to_json(const NestingReport& r) {
  return json{{"pass", r.pass},
              {"margin", r.margin},
              {"checked", r.checked},
              {"failures", r.failures},
              {"worst_margins", r.worst_margins}};
}

json toledo_to_json(const ToledoResult& r, const FixedLineResult* fixed) {
  json j{{"beta1", r.beta1},
         {"beta2", r.beta2},
         {"i_rho", r.i_rho},
         {"degenerate1", r.degenerate1},
         {"degenerate2", r.degenerate2},
         {"method", r.method == FixedLineMethod::Eigenline ? "eigenline" : "iteration"},
         {"word", r.word},
         {"milnor_wood_ok", milnor_wood_check(r)}};
  if (fixed) {
    j["fixed_residual"] = fixed->residual;
    j["statement_word_residual"] = fixed->statement_residual;
  }
  return j;
}

}  // namespace maxrep
