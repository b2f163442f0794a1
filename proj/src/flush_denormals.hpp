#pragma once

#if defined(__SSE3__) || defined(__x86_64__)
#include <pmmintrin.h>
#include <xmmintrin.h>
#define QDC_HAS_MXCSR 1
#endif

namespace qdc::detail {

/// Scoped flush-to-zero / denormals-are-zero. Long propagations of decaying
/// coherences otherwise spend most of their time in subnormal arithmetic.
class FlushDenormals {
 public:
  FlushDenormals() {
#ifdef QDC_HAS_MXCSR
    saved_ = _mm_getcsr();
    _MM_SET_FLUSH_ZERO_MODE(_MM_FLUSH_ZERO_ON);
    _MM_SET_DENORMALS_ZERO_MODE(_MM_DENORMALS_ZERO_ON);
#endif
  }
  ~FlushDenormals() {
#ifdef QDC_HAS_MXCSR
    _mm_setcsr(saved_);
#endif
  }
  FlushDenormals(const FlushDenormals&) = delete;
  FlushDenormals& operator=(const FlushDenormals&) = delete;

 private:
  unsigned int saved_ = 0;
};

}  // namespace qdc::detail
