#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <system_error>

#include "rascal/error.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace rascal {

// Writes through `fill` into a sibling temporary file, then renames it over
// `target`. On any failure the temporary is removed and `target` is untouched.
inline void atomic_write(const std::filesystem::path& target, const std::function<void(std::ostream&)>& fill) {
  namespace fs = std::filesystem;
#if defined(__unix__) || defined(__APPLE__)
  const auto pid = static_cast<long>(::getpid());
#else
  const long pid = 0;
#endif
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(pid);
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
      fill(out);
      out.flush();
      if (!out) throw DataError("write failure on " + tmp.string());
    }
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

}  // namespace rascal
