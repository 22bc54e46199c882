#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsde {

enum class AtomBasis { X, Y, Z };
enum class FieldBasis { X, Z };

char basis_char(AtomBasis b);
char basis_char(FieldBasis b);
AtomBasis parse_atom_basis(std::string_view s);
FieldBasis parse_field_basis(std::string_view s);

// Field measurement outcomes, one bit per slice, oldest slice first.
// z basis: bit 1 means a photon was found. x basis: bit 0 means |+>, the +1
// eigenvalue outcome.
struct MeasurementRecord {
  FieldBasis basis = FieldBasis::Z;
  std::vector<std::uint8_t> outcomes;

  int n_slices() const { return int(outcomes.size()); }
  bool operator==(const MeasurementRecord&) const = default;
};

// z records render as bit strings ("0010"), x records as sign strings
// ("+-++", '+' is the bit-0 outcome).
std::string format_record(const MeasurementRecord& r);
MeasurementRecord parse_record(std::string_view text, FieldBasis basis);

// Oldest-first big-endian packing; lexicographic order of the rendered
// string equals numeric order of the key.
std::uint32_t record_key(const MeasurementRecord& r);
MeasurementRecord record_from_key(std::uint32_t key, int n_slices, FieldBasis basis);

}  // namespace qsde
