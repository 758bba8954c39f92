#include "coset/io.hpp"

#include <fstream>

namespace coset::io {

namespace {

const Json& require_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError("missing field '" + std::string(key) + "'", path + "/" + key);
  }
  return j.at(key);
}

int require_int(const Json& j, const char* key, const std::string& path) {
  const Json& f = require_field(j, key, path);
  if (!f.is_number_integer()) {
    throw ValidationError("expected integer", path + "/" + key);
  }
  return f.get<int>();
}

}  // namespace

Json subspace_to_json(const gf2::Subspace& w) {
  Json j;
  j["n"] = w.n;
  j["k"] = w.k;
  Json basis = Json::array();
  for (const gf2::GF2Vector& row : w.basis()) basis.push_back(row.to_string());
  j["basis"] = basis;
  return j;
}

gf2::Subspace subspace_from_json(const Json& j, const std::string& path) {
  const int n = require_int(j, "n", path);
  const int k = require_int(j, "k", path);
  const Json& basis = require_field(j, "basis", path);
  if (!basis.is_array()) throw ValidationError("expected array", path + "/basis");
  std::vector<std::uint32_t> rows;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Json& row = basis.at(i);
    const std::string prow = path + "/basis/" + std::to_string(i);
    if (!row.is_string()) throw ValidationError("expected 0/1 string", prow);
    const std::string s = row.get<std::string>();
    if (static_cast<int>(s.size()) != n) throw ValidationError("row length != n", prow);
    try {
      rows.push_back(gf2::GF2Vector::from_string(s).bits);
    } catch (const ValidationError& e) {
      throw ValidationError(e.what(), prow);
    }
  }
  try {
    gf2::Subspace w(n, std::move(rows));
    if (w.k != k) throw ValidationError("k does not match basis rank", path + "/k");
    return w;
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), path.empty() ? "/" : path);
  }
}

Json family_to_json(const perms::PermutationFamily& fam) {
  Json j;
  j["n"] = fam.n;
  j["k"] = fam.k;
  Json entries = Json::array();
  for (const perms::PermutationEntry& e : fam.entries) {
    Json entry;
    entry["m"] = e.m;
    entry["perm"] = e.perm;
    entries.push_back(std::move(entry));
  }
  j["entries"] = entries;
  return j;
}

perms::PermutationFamily family_from_json(const Json& j, const std::string& path) {
  perms::PermutationFamily fam;
  fam.n = require_int(j, "n", path);
  fam.k = require_int(j, "k", path);
  const Json& entries = require_field(j, "entries", path);
  if (!entries.is_array()) throw ValidationError("expected array", path + "/entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string pe = path + "/entries/" + std::to_string(i);
    const Json& entry = entries.at(i);
    perms::PermutationEntry out;
    out.m = require_int(entry, "m", pe);
    const Json& perm = require_field(entry, "perm", pe);
    if (!perm.is_array()) throw ValidationError("expected array", pe + "/perm");
    for (const Json& v : perm) {
      if (!v.is_number_integer()) throw ValidationError("expected integer entries", pe + "/perm");
      out.perm.push_back(v.get<int>());
    }
    fam.entries.push_back(std::move(out));
  }
  return fam;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (std::ptrdiff_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::ptrdiff_t j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected non-empty matrix", path);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(j.size());
  std::ptrdiff_t cols = -1;
  Eigen::MatrixXcd m;
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    const std::string pr = path + "/" + std::to_string(r);
    if (!row.is_array()) throw ValidationError("expected matrix row", pr);
    if (cols < 0) {
      cols = static_cast<std::ptrdiff_t>(row.size());
      if (cols == 0) throw ValidationError("empty matrix row", pr);
      m.resize(rows, cols);
    }
    if (static_cast<std::ptrdiff_t>(row.size()) != cols) {
      throw ValidationError("ragged matrix", pr);
    }
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      const Json& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number()) {
        throw ValidationError("expected [re, im] pair", pr + "/" + std::to_string(c));
      }
      m(r, c) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
    }
  }
  return m;
}

Json strategy_to_json(const game::Strategy& s) {
  Json j;
  j["n"] = s.n;
  j["k"] = s.k;
  Json channel;
  channel["dimB"] = s.channel.dim_b;
  channel["dimC"] = s.channel.dim_c;
  Json kraus = Json::array();
  for (const Eigen::MatrixXcd& k : s.channel.kraus) kraus.push_back(matrix_to_json(k));
  channel["kraus"] = kraus;
  j["channel"] = channel;
  Json bob, charlie;
  for (std::size_t wi = 0; wi < s.bob.size(); ++wi) {
    Json povm = Json::array();
    for (const Eigen::MatrixXcd& e : s.bob[wi]) povm.push_back(matrix_to_json(e));
    bob[std::to_string(wi)] = std::move(povm);
  }
  for (std::size_t wi = 0; wi < s.charlie.size(); ++wi) {
    Json povm = Json::array();
    for (const Eigen::MatrixXcd& e : s.charlie[wi]) povm.push_back(matrix_to_json(e));
    charlie[std::to_string(wi)] = std::move(povm);
  }
  j["bob"] = std::move(bob);
  j["charlie"] = std::move(charlie);
  return j;
}

namespace {

std::vector<std::vector<Eigen::MatrixXcd>> povms_from_json(const Json& j, const char* key,
                                                           std::size_t subspaces) {
  const Json& block = require_field(j, key, "");
  const std::string path = std::string("/") + key;
  if (!block.is_object()) throw ValidationError("expected object keyed by subspace index", path);
  std::vector<std::vector<Eigen::MatrixXcd>> out(subspaces);
  std::vector<char> filled(subspaces, 0);
  for (const auto& [skey, povm] : block.items()) {
    std::size_t wi = 0;
    try {
      wi = static_cast<std::size_t>(std::stoul(skey));
    } catch (...) {
      throw ValidationError("subspace key is not an index", path + "/" + skey);
    }
    if (wi >= subspaces) {
      throw ValidationError("subspace index out of range", path + "/" + skey);
    }
    if (!povm.is_array() || povm.empty()) {
      throw ValidationError("expected array of POVM elements", path + "/" + skey);
    }
    for (std::size_t oi = 0; oi < povm.size(); ++oi) {
      out[wi].push_back(matrix_from_json(povm.at(oi),
                                         path + "/" + skey + "/" + std::to_string(oi)));
    }
    filled[wi] = 1;
  }
  for (std::size_t wi = 0; wi < subspaces; ++wi) {
    if (!filled[wi]) {
      throw ValidationError("missing POVM for subspace " + std::to_string(wi), path);
    }
  }
  return out;
}

}  // namespace

game::Strategy strategy_from_json(const Json& j) {
  const int n = require_int(j, "n", "");
  const int k = require_int(j, "k", "");
  if (n < 1 || k < 0 || k > n) throw ValidationError("need 0 <= k <= n", "/n");
  const Json& channel = require_field(j, "channel", "");
  const int dim_b = require_int(channel, "dimB", "/channel");
  const int dim_c = require_int(channel, "dimC", "/channel");
  const Json& kraus_json = require_field(channel, "kraus", "/channel");
  if (!kraus_json.is_array() || kraus_json.empty()) {
    throw ValidationError("expected non-empty array", "/channel/kraus");
  }
  std::vector<Eigen::MatrixXcd> kraus;
  for (std::size_t i = 0; i < kraus_json.size(); ++i) {
    kraus.push_back(matrix_from_json(kraus_json.at(i), "/channel/kraus/" + std::to_string(i)));
  }
  const auto count = gf2::gaussian_binomial(n, k);
  if (count > gf2::kDefaultGrassmannianCap) {
    throw CapExceeded("strategy_from_json: Grassmannian too large", count.str());
  }
  const std::size_t subspaces = static_cast<std::size_t>(count);
  auto bob = povms_from_json(j, "bob", subspaces);
  auto charlie = povms_from_json(j, "charlie", subspaces);
  try {
    return game::Strategy(n, k, game::Channel(n, dim_b, dim_c, std::move(kraus)),
                          std::move(bob), std::move(charlie));
  } catch (const ValidationError& e) {
    throw ValidationError(e.what(), "/");
  }
}

Json operator_dump(const Eigen::MatrixXcd& m) {
  Json j;
  j["dim"] = m.rows();
  Json re = Json::array(), im = Json::array();
  for (std::ptrdiff_t i = 0; i < m.rows(); ++i) {
    for (std::ptrdiff_t c = 0; c < m.cols(); ++c) {
      re.push_back(m(i, c).real());
      im.push_back(m(i, c).imag());
    }
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Json state_dump(const Eigen::VectorXcd& v) {
  Json j;
  j["dim"] = v.size();
  Json re = Json::array(), im = Json::array();
  for (std::ptrdiff_t i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open file: " + file);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("JSON parse error: ") + e.what(), "/");
  }
}

void save_json_file(const std::string& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw ValidationError("cannot write file: " + file);
  out << j.dump(2) << "\n";
}

}  // namespace coset::io
