#include "qsde/record.hpp"

#include <stdexcept>

namespace qsde {

char basis_char(AtomBasis b) {
  switch (b) {
    case AtomBasis::X: return 'x';
    case AtomBasis::Y: return 'y';
    case AtomBasis::Z: return 'z';
  }
  return '?';
}

char basis_char(FieldBasis b) { return b == FieldBasis::X ? 'x' : 'z'; }

AtomBasis parse_atom_basis(std::string_view s) {
  if (s == "x" || s == "X") return AtomBasis::X;
  if (s == "y" || s == "Y") return AtomBasis::Y;
  if (s == "z" || s == "Z") return AtomBasis::Z;
  throw std::invalid_argument("atom basis must be one of x, y, z");
}

FieldBasis parse_field_basis(std::string_view s) {
  if (s == "x" || s == "X") return FieldBasis::X;
  if (s == "z" || s == "Z") return FieldBasis::Z;
  throw std::invalid_argument("field basis must be x or z");
}

std::string format_record(const MeasurementRecord& r) {
  std::string out;
  out.reserve(r.outcomes.size());
  for (std::uint8_t bit : r.outcomes) {
    if (r.basis == FieldBasis::Z)
      out.push_back(bit ? '1' : '0');
    else
      out.push_back(bit ? '-' : '+');
  }
  return out;
}

MeasurementRecord parse_record(std::string_view text, FieldBasis basis) {
  MeasurementRecord r;
  r.basis = basis;
  r.outcomes.reserve(text.size());
  for (char ch : text) {
    if (basis == FieldBasis::Z) {
      if (ch == '0' || ch == '1')
        r.outcomes.push_back(ch == '1');
      else
        throw std::invalid_argument("counting record must contain only '0'/'1'");
    } else {
      if (ch == '+' || ch == '-')
        r.outcomes.push_back(ch == '-');
      else
        throw std::invalid_argument("homodyne record must contain only '+'/'-'");
    }
  }
  return r;
}

std::uint32_t record_key(const MeasurementRecord& r) {
  if (r.outcomes.size() > 31) throw std::invalid_argument("record too long for packing");
  std::uint32_t key = 0;
  for (std::uint8_t bit : r.outcomes) key = (key << 1) | (bit & 1u);
  return key;
}

MeasurementRecord record_from_key(std::uint32_t key, int n_slices, FieldBasis basis) {
  MeasurementRecord r;
  r.basis = basis;
  r.outcomes.resize(n_slices);
  for (int l = 0; l < n_slices; ++l) r.outcomes[l] = (key >> (n_slices - 1 - l)) & 1u;
  return r;
}

}  // namespace qsde
