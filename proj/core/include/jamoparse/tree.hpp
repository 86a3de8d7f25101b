#pragma once

#include <span>

namespace jamoparse {

// Head vectors are indexed by token position minus one: heads[k] is the head
// of token k+1, with 0 meaning the artificial ROOT.

// Every head is in [0, n], no token heads itself, and every token reaches
// ROOT (so there are no cycles).
bool is_well_formed(std::span<const int> heads);

// Exactly one token is attached to ROOT.
bool has_single_root(std::span<const int> heads);

// No two arcs cross when tokens (and ROOT at position 0) are laid out in
// order. Requires a well-formed head vector.
bool is_projective(std::span<const int> heads);

}  // namespace jamoparse
