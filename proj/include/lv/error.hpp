/*
 * Copyright 2026 latentview contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace lv {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; message carries file name and line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what) {}
};

// Training produced a non-finite value.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lv
