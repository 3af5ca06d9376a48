#pragma once

#include <string>

#include <json.hpp>

#include "gencs/codes.hpp"
#include "gencs/relu_net.hpp"
#include "gencs/separated_set.hpp"

namespace gencs {

// Network document: {input_dim, layers: [{rows, cols, activation,
// weights(row-major)}]}. Doubles survive a round trip bit-identically.
nlohmann::json net_to_json(const ReluNetwork& net);
ReluNetwork net_from_json(const nlohmann::json& j);

// Codebook document: {n, tau, points: [[+-1 signs]]}; the 1/sqrt(n) scaling
// is applied on load.
nlohmann::json codebook_to_json(const BalancedCodebook& cb);
BalancedCodebook codebook_from_json(const nlohmann::json& j);

// Separated set document with its certificates.
nlohmann::json set_to_json(const WellSeparatedSet& set);

std::string activation_name(ActivationKind kind);
ActivationKind activation_from_name(const std::string& name);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

// Shortest round-trip representation of a double for CSV output.
std::string format_double(double v);

}  // namespace gencs
