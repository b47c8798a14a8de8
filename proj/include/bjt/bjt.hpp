/*
 *   Copyright 2026 The bjt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BJT_BJT_HPP
#define BJT_BJT_HPP

#include "bjt/binarize.hpp"
#include "bjt/build.hpp"
#include "bjt/core_algebra.hpp"
#include "bjt/errors.hpp"
#include "bjt/jointree.hpp"
#include "bjt/network.hpp"
#include "bjt/op_counter.hpp"
#include "bjt/potential.hpp"
#include "bjt/propagation.hpp"
#include "bjt/random_network.hpp"

#endif  // BJT_BJT_HPP
