#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "fqcurves/catalog.hpp"
#include "fqcurves/error.hpp"

namespace testing_support {

/// Error code thrown by f; records a failure if nothing is thrown.
inline fqc::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const fqc::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return fqc::ErrorCode::InvalidArgument;
}

inline const fqc::NqCatalog& reference_catalog() {
  static const fqc::NqCatalog c = [] {
    fqc::NqCatalog cat = fqc::NqCatalog::embedded();
    cat.load_file(FQC_DATA_DIR "/nq_reference.tsv");
    return cat;
  }();
  return c;
}

}  // namespace testing_support
