#ifndef POSMAP_MAPIO_HPP
#define POSMAP_MAPIO_HPP

#include "posmap/supermap.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace posmap {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Map files are json objects selected by a "kind" field:
///   choi:    {"kind":"choi","in_dim":n,"out_dim":k,"data":[...]} where data
///            is the (n·k)×(n·k) Choi matrix as rows of [re, im] pairs.
///   kraus:   {"kind":"kraus","in_dim":n,"out_dim":k,"data":[V1,V2,...]},
///            each V a k×n matrix of [re, im] pairs; the map is Σ Ad_{V_t}.
///   builtin: {"kind":"builtin","name":NAME,"dim":n} with NAME one of
///            identity, transpose, reduction, lambda_mu (extra field mu),
///            sp_k_random (extra fields k, terms, seed).
/// Hermiticity of a choi matrix is reported downstream, never enforced here.
SuperMap parse_map(const nlohmann::json& j);

/// parse_map on the json contents of a file; wraps I/O and syntax failures
/// in ParseError with the path in the message.
SuperMap load_map(const std::string& path);

nlohmann::json matrix_to_json(const ComplexMatrix& x);
nlohmann::json vector_to_json(const std::vector<Complex>& v);

/// Serializes in choi form; parse_map(map_to_json(m)) reproduces the choi
/// matrix exactly (decimal round-trip through json numbers).
nlohmann::json map_to_json(const SuperMap& m);

} // namespace posmap

#endif
