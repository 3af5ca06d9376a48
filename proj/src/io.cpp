#include "gencs/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gencs {

std::string activation_name(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::positive: return "positive";
    case ActivationKind::negative: return "negative";
    case ActivationKind::none: return "none";
  }
  return "none";
}

ActivationKind activation_from_name(const std::string& name) {
  if (name == "positive") return ActivationKind::positive;
  if (name == "negative") return ActivationKind::negative;
  if (name == "none") return ActivationKind::none;
  throw std::invalid_argument("unknown activation kind: " + name);
}

nlohmann::json net_to_json(const ReluNetwork& net) {
  nlohmann::json j;
  j["input_dim"] = net.input_dim();
  j["layers"] = nlohmann::json::array();
  for (const auto& layer : net.layers()) {
    const Matrix dense = layer.weights.to_dense();
    nlohmann::json lj;
    lj["rows"] = dense.rows;
    lj["cols"] = dense.cols;
    lj["activation"] = activation_name(layer.activation);
    lj["weights"] = dense.a;
    j["layers"].push_back(std::move(lj));
  }
  return j;
}

ReluNetwork net_from_json(const nlohmann::json& j) {
  std::vector<AffineReluLayer> layers;
  for (const auto& lj : j.at("layers")) {
    Matrix w(lj.at("rows").get<std::size_t>(), lj.at("cols").get<std::size_t>());
    const auto& vals = lj.at("weights");
    if (vals.size() != w.a.size())
      throw std::invalid_argument("net_from_json: weight count does not match shape");
    for (std::size_t i = 0; i < w.a.size(); ++i) w.a[i] = vals[i].get<double>();
    layers.push_back({WeightMatrix(std::move(w)),
                      activation_from_name(lj.at("activation").get<std::string>())});
  }
  ReluNetwork net(std::move(layers));
  if (j.contains("input_dim") &&
      j.at("input_dim").get<std::size_t>() != net.input_dim())
    throw std::invalid_argument("net_from_json: input_dim mismatch");
  return net;
}

nlohmann::json codebook_to_json(const BalancedCodebook& cb) {
  nlohmann::json j;
  j["n"] = cb.n;
  j["tau"] = cb.tau;
  j["min_hamming"] = cb.min_hamming;
  j["max_hamming"] = cb.max_hamming;
  auto points = nlohmann::json::array();
  for (const auto& p : cb.points) {
    std::vector<int> signs(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) signs[i] = p[i] > 0.0 ? 1 : -1;
    points.push_back(signs);
  }
  j["points"] = std::move(points);
  return j;
}

BalancedCodebook codebook_from_json(const nlohmann::json& j) {
  BalancedCodebook cb;
  cb.n = j.at("n").get<std::size_t>();
  cb.tau = j.at("tau").get<double>();
  const double scale = 1.0 / std::sqrt(static_cast<double>(cb.n));
  for (const auto& pj : j.at("points")) {
    std::vector<double> p(pj.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = pj[i].get<int>() > 0 ? scale : -scale;
    cb.points.push_back(std::move(p));
  }
  if (cb.points.size() >= 2) {
    const auto [mn, mx] = pairwise_hamming(cb.points);
    cb.min_hamming = mn;
    cb.max_hamming = mx;
  }
  return cb;
}

nlohmann::json set_to_json(const WellSeparatedSet& set) {
  nlohmann::json j;
  j["L"] = set.L;
  j["r"] = set.r;
  j["R"] = set.R;
  j["k"] = set.k;
  j["n"] = set.n;
  j["path_size"] = set.path_size;
  j["X"] = set.latent_points;
  j["Z"] = set.image_points;
  j["certificates"] = {
      {"min_dist", set.cert.min_pairwise_distance},
      {"max_norm", set.cert.max_image_norm},
      {"max_latent_norm", set.cert.max_latent_norm},
      {"coordinate_deviation", set.cert.coordinate_deviation},
      {"cardinality", set.cert.cardinality},
      {"cardinality_bound", set.cert.cardinality_bound},
      {"lipschitz_estimate", set.cert.lipschitz_estimate},
      {"max_segment_stretch", set.cert.max_segment_stretch},
  };
  return j;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace gencs
