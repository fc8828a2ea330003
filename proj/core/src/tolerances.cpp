#include "dissim/tolerances.hpp"

#include <cstdlib>
#include <fstream>
#include <string>

#include "dissim/errors.hpp"
#include "json.hpp"

namespace dissim {

namespace {

ToleranceTable load_table() {
  ToleranceTable t;
  const char* path = std::getenv("DISSIM_TOL_TABLE");
  if (path == nullptr) return t;
  std::ifstream in(path);
  if (!in) throw IoError(std::string("cannot open tolerance table: ") + path);
  nlohmann::json j = nlohmann::json::parse(in);

  auto get = [&](const char* name, double& slot) {
    if (j.contains(name)) slot = j.at(name).get<double>();
  };
  get("hermiticity", t.hermiticity);
  get("hermiticity_strict", t.hermiticity_strict);
  get("eig_reconstruction", t.eig_reconstruction);
  get("orthonormality", t.orthonormality);
  get("unitarity", t.unitarity);
  get("exact_identity", t.exact_identity);
  get("trace_preservation", t.trace_preservation);
  get("density_trace", t.density_trace);
  get("density_min_eig", t.density_min_eig);
  get("choi_min_eig", t.choi_min_eig);
  get("partial_trace", t.partial_trace);
  get("semigroup", t.semigroup);
  get("gauge_invariance", t.gauge_invariance);
  get("jump_bound", t.jump_bound);
  get("sdp_gap", t.sdp_gap);
  get("sdp_bracket", t.sdp_bracket);
  get("duhamel_slack", t.duhamel_slack);
  get("det_relative", t.det_relative);
  get("affine_consistency", t.affine_consistency);
  get("rigidity_residual", t.rigidity_residual);
  get("identity_jump", t.identity_jump);
  get("dissipator_null", t.dissipator_null);
  get("variance_functional", t.variance_functional);
  return t;
}

}  // namespace

const ToleranceTable& tol() {
  static const ToleranceTable table = load_table();
  return table;
}

}  // namespace dissim
