#ifndef SUPLOC_IO_HPP
#define SUPLOC_IO_HPP

#include <string>

#include <json.hpp>

#include "suploc/measure.hpp"
#include "suploc/momentio.hpp"
#include "suploc/orthopoly.hpp"
#include "suploc/recover.hpp"

namespace suploc {

using Json = nlohmann::json;

// "-" means stdin / stdout. Failures raise Error(io) or Error(parse).
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);
Json read_json(const std::string& path);

enum class InputKind { spec, moments, recurrence, estimate };

// Decided by the keys present; Error(parse) if nothing matches.
InputKind detect_input(const Json& j);

MeasureSpec spec_from_json(const Json& j);
Json to_json(const MeasureSpec& spec);

// {"moments":[...]} or {"matrix":[[...]]}.
MomentData moments_from_json(const Json& j);
Json to_json(const MomentData& data);

Recurrence recurrence_from_json(const Json& j);
Json to_json(const Recurrence& rec);

SupportEstimate estimate_from_json(const Json& j);
Json to_json(const SupportEstimate& estimate);

}  // namespace suploc

#endif  // SUPLOC_IO_HPP
