// Copyright 2026 The vwb Authors
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

#ifndef VWB_ERRORS_HPP_
#define VWB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vwb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* code() const noexcept { return "Error"; }
};

#define VWB_DECLARE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(what) {}      \
    const char* code() const noexcept override { return #Name; } \
  }

VWB_DECLARE_ERROR(MalformedInterval);
VWB_DECLARE_ERROR(OutOfDomain);
VWB_DECLARE_ERROR(IndeterminateForm);
VWB_DECLARE_ERROR(EmptySolutionSet);
VWB_DECLARE_ERROR(NotClosed);
VWB_DECLARE_ERROR(PreconditionViolated);
VWB_DECLARE_ERROR(PointNotInSet);
VWB_DECLARE_ERROR(PointNotOnGraph);
VWB_DECLARE_ERROR(UnknownScenario);
VWB_DECLARE_ERROR(UnknownOperation);
VWB_DECLARE_ERROR(ValidationError);
VWB_DECLARE_ERROR(ParseError);
VWB_DECLARE_ERROR(UnsupportedDimension);

#undef VWB_DECLARE_ERROR

}  // namespace vwb

#endif  // VWB_ERRORS_HPP_
