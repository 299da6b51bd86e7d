// Copyright 2026 The QuickCue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>

#include "quickcue/json_io.hpp"

namespace quickcue {

// Validator for the JSON Schema keywords used by the schemas under schemas/:
// type, enum, const, properties, required, additionalProperties, items,
// prefixItems, minItems, maxItems, minLength, maxLength, minimum, maximum,
// pattern and local "#/$defs/..." references.
//
// Throws SchemaError for the first violation, with a path such as
// "reviews[2].id" ("" for the document root).
void validate_json(const Json& schema, const Json& document);

// Parses one of the embedded schemas.
const Json& review_set_schema_json();
const Json& classify_response_schema_json();
const Json& digest_schema_json();
const Json& health_schema_json();
const Json& error_schema_json();

}  // namespace quickcue
