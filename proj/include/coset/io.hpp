#pragma once

#include <string>

#include <json.hpp>

#include "coset/game.hpp"
#include "coset/gf2.hpp"
#include "coset/perms.hpp"

namespace coset::io {

using Json = nlohmann::ordered_json;

// Subspace file schema: {n, k, basis: ["0110", ...]}, rows MSB-left.
Json subspace_to_json(const gf2::Subspace& w);
gf2::Subspace subspace_from_json(const Json& j, const std::string& path = "");

// Permutation family schema: {n, k, entries: [{m, perm: [int]}]}.
Json family_to_json(const perms::PermutationFamily& fam);
perms::PermutationFamily family_from_json(const Json& j, const std::string& path = "");

// Matrices as [[[re,im], ...], ...] row-major.
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j, const std::string& path);

// Strategy schema:
// {n, k, channel: {dimB, dimC, kraus: [matrix]},
//  bob: {"<subspaceIndex>": [matrix]}, charlie: {...}}
Json strategy_to_json(const game::Strategy& s);
game::Strategy strategy_from_json(const Json& j);

// State/operator debug dumps: {dim, re: [...], im: [...]}, row-major.
Json operator_dump(const Eigen::MatrixXcd& m);
Json state_dump(const Eigen::VectorXcd& v);

Json load_json_file(const std::string& file);
void save_json_file(const std::string& file, const Json& j);

}  // namespace coset::io
