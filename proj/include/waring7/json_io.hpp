#pragma once

#include <string>

#include <json.hpp>

#include "waring7/decomposer.hpp"
#include "waring7/experiments.hpp"
#include "waring7/form.hpp"
#include "waring7/theta.hpp"

namespace waring7 {

using Json = nlohmann::json;

/// All parsers throw Error(ErrorKind::Parse) on malformed input.
Json scalar_to_json(Scalar z);
Scalar scalar_from_json(const Json& j);

/// Dense output: {"side","nvars","degree","coeffs":[[re,im],...]} in graded-lex
/// order. Input also accepts the sparse variant with "terms":[{"exp","value"}].
Json form_to_json(const HomogeneousForm& f);
HomogeneousForm form_from_json(const Json& j);

/// {"rows":[[z,z,z],[z,z,z],[z,z,z]]}; row i holds the coordinates of x^i.
/// Input also accepts an array of three dual linear forms.
Json frame_to_json(const Eigen::Matrix3cd& rows);
Eigen::Matrix3cd frame_from_json(const Json& j);

Json failure_to_json(const FailureReason& r);

Json decomposition_to_json(const Decomposition& dec, const std::vector<TermProvenance>& provenance = {});
/// Directions may be given as 3 coordinates or as a primal linear form object.
Decomposition decomposition_from_json(const Json& j);

Json chain_to_json(const ThetaChain& chain);
Json probe_report_to_json(const ProbeReport& report);
Json experiment_report_to_json(const ExperimentReport& report);

Json read_json_file(const std::string& path);
std::string dump_json(const Json& j, bool pretty);

}  // namespace waring7
