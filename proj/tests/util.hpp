#pragma once

#include <string>

#include "localdel/errors.hpp"

// Kind of the localdel::Error thrown by f, or "" if nothing was thrown.
template <class F>
std::string kind_of(F&& f) {
  try {
    f();
  } catch (const localdel::Error& e) {
    return e.kind();
  }
  return "";
}
