/*
   Copyright 2026 The qdiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef QDIFF_PARSE_HPP
#define QDIFF_PARSE_HPP

#include <string>

#include "qdiff/classify.hpp"
#include "qdiff/ratfun.hpp"

namespace qdiff {

/// Expression grammar: integer/rational literals, the variable `x`,
/// operators + - * / ^ and parentheses; `^` takes integer exponents only;
/// whitespace-insensitive.  Throws parse_error with position.
RatFun parse_ratfun(const std::string& s);

/// Rational literal such as "8", "-3/4", "2.5" is not accepted (exact only).
Rat parse_rational(const std::string& s);

/// Classifier parameter: "q", "q^3", "q^(2/3)", "q^(-1)" or a rational
/// literal.
ParamValue parse_param(const std::string& s);

std::string format_ratfun(const RatFun& f);

}  // namespace qdiff

#endif
