// The strictness-preserving translation from the call-by-name calculus into
// call-by-push-value: types to (computation type, residual vector) pairs,
// contexts pointwise, and terms by thunking at every binding site.
#pragma once

#include "strictness/cbn.hpp"
#include "strictness/cbpv.hpp"

namespace strictness {

struct TypeTranslation {
  CompTypePtr target;
  AttrVec residual;
};

// Residuals track the suspensions a CBN arrow carries that CBPV arrows do
// not; they land on the enclosing U grades. The residual is scoped over
// `scope` and is the identity vector at returner targets in Base mode.
TypeTranslation translate_type(const CbnTypePtr& t, Mode mode,
                               const std::vector<VarId>& scope);

CbpvCtx translate_ctx(const CbnCtx& ctx, Mode mode);

// Requires e to check under ctx; the synthesized types of subterms direct
// the annotations placed on the translated term.
CompPtr translate_term(const CbnCtx& ctx, const CbnTermPtr& e, Mode mode);

}  // namespace strictness
