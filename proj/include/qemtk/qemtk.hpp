// Copyright 2026 The qemtk authors.
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

#ifndef QEMTK_QEMTK_HPP
#define QEMTK_QEMTK_HPP

#include "qemtk/analysis.hpp"
#include "qemtk/circuits.hpp"
#include "qemtk/classical.hpp"
#include "qemtk/errors.hpp"
#include "qemtk/inverses.hpp"
#include "qemtk/linalg.hpp"
#include "qemtk/matrep.hpp"
#include "qemtk/matrix.hpp"
#include "qemtk/noisemodels.hpp"
#include "qemtk/protocols.hpp"
#include "qemtk/rng.hpp"

#endif // QEMTK_QEMTK_HPP
