#ifndef ERP_JSON_IO_HPP
#define ERP_JSON_IO_HPP

#include <json.hpp>

#include "erp/connection.hpp"
#include "erp/erp.hpp"
#include "erp/graph.hpp"
#include "erp/models.hpp"
#include "erp/transform.hpp"

namespace erp {

// ordered_json keeps insertion order, which together with nlohmann's
// shortest-round-trip float formatting makes output byte-deterministic.
using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const Multigraph& g);
Multigraph graph_from_json(const Json& j);

Json to_json(const Fragment& f);
Fragment fragment_from_json(const Json& j);

Json to_json(const VertexModel& m);
VertexModel vertex_model_from_json(const Json& j);

Json to_json(const EdgeModelEval& h);
EdgeModelEval edge_model_eval_from_json(const Json& j);

Json to_json(const EdgeModelTable& t);
EdgeModelTable edge_model_table_from_json(const Json& j);

Json to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd cmatrix_from_json(const Json& j);

Json to_json(const ErpVerdict& v);
Json to_json(const FailureWitness& w);

// Reads either an EdgeModelEval or an EdgeModelTable, keyed on the presence
// of "terms" vs "coeffs".
bool json_is_eval_form(const Json& j);

}  // namespace erp

#endif
