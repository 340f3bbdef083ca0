// Copyright 2026 The MFEE Authors
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

#include <doctest.h>

#include "mfee/types.hpp"

using namespace mfee;

TEST_CASE("enum names round trip") {
  for (Decision d : {Decision::kRender, Decision::kDirect, Decision::kNoOp,
                     Decision::kAbstain}) {
    CHECK(decision_from_string(to_string(d)) == d);
  }
  for (RenderReason r :
       {RenderReason::kNovelGeneration, RenderReason::kSemanticAmbiguity,
        RenderReason::kLowConfidence, RenderReason::kNoPathway}) {
    CHECK(render_reason_from_string(to_string(r)) == r);
  }
  for (ProofTag p : {ProofTag::kCacheHit, ProofTag::kDeterministicRule,
                     ProofTag::kKbLookup}) {
    CHECK(proof_tag_from_string(to_string(p)) == p);
  }
  for (Category c : kAllCategories) {
    CHECK(category_from_string(to_string(c)) == c);
  }
  CHECK(!decision_from_string("bogus").has_value());
  CHECK(!category_from_string("").has_value());
}

TEST_CASE("validate_request fills defaults") {
  RawRequest raw;
  raw.request_id = "r1";
  raw.prompt = "hello";
  const Request request = validate_request(raw);
  CHECK(request.model == "default");
  CHECK(request.temperature == 0.0);
  CHECK(request.max_tokens == kDefaultMaxTokens);
  CHECK(request.seed == kDefaultSeed);
}

TEST_CASE("validate_request rejects bad fields by name") {
  RawRequest raw;
  raw.prompt = "hello";
  CHECK_THROWS_WITH_AS(validate_request(raw), doctest::Contains("request_id"),
                       ValidationError);

  raw.request_id = "r1";
  raw.prompt.reset();
  CHECK_THROWS_AS(validate_request(raw), ValidationError);

  raw.prompt = "hello";
  raw.max_tokens = 0;
  CHECK_THROWS_AS(validate_request(raw), ValidationError);

  raw.max_tokens = 10;
  raw.temperature = -0.5;
  CHECK_THROWS_AS(validate_request(raw), ValidationError);
}

TEST_CASE("validation errors carry the field") {
  RawRequest raw;
  raw.request_id = "r1";
  raw.max_tokens = -3;
  raw.prompt = "p";
  try {
    (void)validate_request(raw);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "max_tokens");
  }
}

TEST_CASE("outcome_well_formed ties optionals to the decision") {
  GateOutcome direct;
  direct.decision = Decision::kDirect;
  direct.direct_output = "4";
  direct.proof_tag = ProofTag::kDeterministicRule;
  CHECK(outcome_well_formed(direct));

  direct.proof_tag.reset();
  CHECK(!outcome_well_formed(direct));

  GateOutcome render;
  render.decision = Decision::kRender;
  render.render_reason = RenderReason::kNoPathway;
  CHECK(outcome_well_formed(render));
  render.direct_output = "spurious";
  CHECK(!outcome_well_formed(render));

  GateOutcome noop;
  noop.decision = Decision::kNoOp;
  CHECK(outcome_well_formed(noop));
}
