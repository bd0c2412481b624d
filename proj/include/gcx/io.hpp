#ifndef GCX_IO_HPP
#define GCX_IO_HPP

#include <string>

#include "gcx/certify.hpp"
#include "gcx/core.hpp"
#include "gcx/curve.hpp"
#include "gcx/search.hpp"

namespace gcx {

// JSON interchange. Rationals travel as strings ("p/q" or integer strings)
// so no consumer ever rounds them. Malformed documents raise InvalidInput.

std::string seq_to_json(const ConvexSeq& seq, int indent = 2);
ConvexSeq seq_from_json(const std::string& text);

std::string cert_to_json(const Certificate& cert, int indent = 2);
Certificate cert_from_json(const std::string& text);

std::string witness_to_json(const Witness& w, int indent = 2);
Witness witness_from_json(const std::string& text);

std::string curve_to_json(const CurveSpec& spec, int indent = 2);
CurveSpec curve_from_json(const std::string& text);

std::string unipotent_to_json(const UnipotentMatrix& l, int indent = 2);
UnipotentMatrix unipotent_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Witness library: content-addressed files under GCX_WITNESS_DIR (default
// "witnesses/"). Returns the path written.
std::string archive_witness(const Witness& w);
std::string witness_dir();

}  // namespace gcx

#endif
