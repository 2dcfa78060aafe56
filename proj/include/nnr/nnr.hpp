// Copyright 2026 The Authors.
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

// Umbrella header for the library; the CLI lives in nnr/cli.hpp.
#pragma once

#include "nnr/compiler.hpp"
#include "nnr/engine.hpp"
#include "nnr/ensemble.hpp"
#include "nnr/errors.hpp"
#include "nnr/factorization.hpp"
#include "nnr/field.hpp"
#include "nnr/fragile.hpp"
#include "nnr/fragile_io.hpp"
#include "nnr/index_set.hpp"
#include "nnr/linalg.hpp"
#include "nnr/matrix.hpp"
#include "nnr/matrix_io.hpp"
#include "nnr/numeric.hpp"
#include "nnr/poly_io.hpp"
#include "nnr/polynomial.hpp"
#include "nnr/qs3.hpp"
#include "nnr/rat.hpp"
#include "nnr/rationalize.hpp"
#include "nnr/simplex.hpp"
#include "nnr/stabilizer.hpp"
#include "nnr/text_io.hpp"
