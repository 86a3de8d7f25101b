#pragma once

namespace jamoparse {

#if defined(JAMOPARSE_SINGLE_PRECISION)
using real = float;
#else
using real = double;
#endif

}  // namespace jamoparse
