// Copyright 2026 The Ontomerge Authors.
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

#ifndef ONTOMERGE_ONTOMERGE_HPP_
#define ONTOMERGE_ONTOMERGE_HPP_

#include "ontomerge/assignment.hpp"
#include "ontomerge/disjoint_sets.hpp"
#include "ontomerge/enrichment.hpp"
#include "ontomerge/errors.hpp"
#include "ontomerge/evalgen.hpp"
#include "ontomerge/integrator.hpp"
#include "ontomerge/model.hpp"
#include "ontomerge/model_io.hpp"
#include "ontomerge/rational.hpp"
#include "ontomerge/similarity.hpp"
#include "ontomerge/term.hpp"
#include "ontomerge/transform.hpp"

#endif  // ONTOMERGE_ONTOMERGE_HPP_
