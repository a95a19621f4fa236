#include "snrlab/common.hpp"

namespace snrlab {

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::lci:
      return "lci";
    case Architecture::pai:
      return "pai";
    case Architecture::lai:
      return "lai";
  }
  return "unknown";
}

Architecture parse_architecture(std::string_view name) {
  if (name == "lci") return Architecture::lci;
  if (name == "pai") return Architecture::pai;
  if (name == "lai") return Architecture::lai;
  throw UsageError("unknown architecture '" + std::string(name) + "' (expected lci, pai or lai)");
}

}  // namespace snrlab
