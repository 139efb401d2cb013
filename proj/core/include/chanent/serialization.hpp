/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_SERIALIZATION_HPP
#define CHANENT_SERIALIZATION_HPP

#include <string>

#include "chanent/channels.hpp"

namespace chanent::serial {

/// Channel JSON schema:
///   {"name": str,
///    "dims": {"in": [{"label": str, "d": int}, ...], "out": [...]},
///    "kraus": [ [[ [re, im], ... ], ...], ... ]}
Channel channel_from_json_text(const std::string& text);
Channel channel_from_json_file(const std::string& path);
std::string channel_to_json_text(const Channel& c, int indent = 2);

/// Builder-string grammar (colon-separated key=value):
///   swap:d=2 | cnot | id2 | id2x2 | depol:p=0.5[:d=2] | replacer:maxmix[:d=2]
///   | mix:u=<spec>:p=0.3 | tensor(<spec>,<spec>,...)
/// A spec that names an existing .json file is loaded from it instead.
Channel build_channel(const std::string& spec);

/// Shortest decimal representation with the given number of significant
/// digits (12 for all CSV output).
std::string format_significant(double v, int digits = 12);

}  // namespace chanent::serial

#endif
