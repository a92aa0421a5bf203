// Copyright 2026 The bevkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BEVKIT__ERRORS_HPP_
#define BEVKIT__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bevkit
{

struct ParseError : std::runtime_error
{
  explicit ParseError(const std::string & what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error
{
  explicit IoError(const std::string & what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error
{
  explicit ConfigError(const std::string & what) : std::runtime_error(what) {}
};

struct GeometryError : std::runtime_error
{
  explicit GeometryError(const std::string & what) : std::runtime_error(what) {}
};

}  // namespace bevkit

#endif  // BEVKIT__ERRORS_HPP_
