#include "iris_aging/regression.hpp"

namespace iris_aging {

namespace {

using K = Term::Kind;
constexpr Covariate OC = Covariate::OC;
constexpr Covariate LC = Covariate::LC;
constexpr Covariate IL = Covariate::IL;
constexpr Covariate SH = Covariate::SH;
constexpr Covariate PR = Covariate::PR;
constexpr Covariate IR = Covariate::IR;

ModelSpec make(std::string name, Family fam, std::vector<Term> rest) {
  ModelSpec spec;
  spec.name = std::move(name);
  spec.family = fam;
  spec.terms.push_back(Term::intercept());
  spec.terms.push_back(Term::time());
  for (auto& t : rest) spec.terms.push_back(t);
  spec.validate();
  return spec;
}

std::vector<Term> rawPair(Covariate c) { return {Term::raw(c, 1), Term::raw(c, 2)}; }

void append(std::vector<Term>& out, const std::vector<Term>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::vector<ModelSpec> buildCatalog() {
  std::vector<ModelSpec> cat;
  const Term dLC = Term::absDiff(LC), dIL = Term::absDiff(IL), dSH = Term::absDiff(SH);
  const Term dPR = Term::absDiff(PR), dIR = Term::absDiff(IR);
  const Term ocp = Term::absProd(OC);

  // --- family D: raw baseline, per-covariate substitutions, geometry,
  // combination, and the leave-one-quality-out variants.
  {
    auto raws = [&](bool withOC, bool withLC, bool withIL, bool withSH) {
      std::vector<Term> t;
      if (withOC) append(t, rawPair(OC));
      if (withLC) append(t, rawPair(LC));
      if (withIL) append(t, rawPair(IL));
      if (withSH) append(t, rawPair(SH));
      return t;
    };
    cat.push_back(make("D0", Family::D, raws(true, true, true, true)));

    std::vector<Term> d1{ocp};
    append(d1, raws(false, true, true, true));
    cat.push_back(make("D1", Family::D, d1));

    std::vector<Term> d2 = rawPair(OC);
    d2.push_back(dLC);
    append(d2, raws(false, false, true, true));
    cat.push_back(make("D2", Family::D, d2));

    std::vector<Term> d3 = raws(true, true, false, false);
    d3.push_back(dIL);
    append(d3, rawPair(SH));
    cat.push_back(make("D3", Family::D, d3));

    std::vector<Term> d4 = raws(true, true, true, false);
    d4.push_back(dSH);
    cat.push_back(make("D4", Family::D, d4));

    cat.push_back(make("D5", Family::D, {ocp, dLC, dIL, dSH}));
    cat.push_back(make("D6", Family::D, {dPR, dIR}));
    cat.push_back(make("D7", Family::D, {ocp, dLC, dIL, dSH, dPR, dIR}));
    // D8..D11: D7 minus one quality term, in the order OC, LC, IL, SH
    cat.push_back(make("D8", Family::D, {dLC, dIL, dSH, dPR, dIR}));
    cat.push_back(make("D9", Family::D, {ocp, dIL, dSH, dPR, dIR}));
    cat.push_back(make("D10", Family::D, {ocp, dLC, dSH, dPR, dIR}));
    cat.push_back(make("D11", Family::D, {ocp, dLC, dIL, dPR, dIR}));
  }

  // --- family B: the D progression without OC (no polar mask there).
  {
    auto raws = [&](bool withLC, bool withIL, bool withSH) {
      std::vector<Term> t;
      if (withLC) append(t, rawPair(LC));
      if (withIL) append(t, rawPair(IL));
      if (withSH) append(t, rawPair(SH));
      return t;
    };
    cat.push_back(make("B0", Family::B, raws(true, true, true)));

    std::vector<Term> b1{dLC};
    append(b1, raws(false, true, true));
    cat.push_back(make("B1", Family::B, b1));

    std::vector<Term> b2 = raws(true, false, false);
    b2.push_back(dIL);
    append(b2, rawPair(SH));
    cat.push_back(make("B2", Family::B, b2));

    std::vector<Term> b3 = raws(true, true, false);
    b3.push_back(dSH);
    cat.push_back(make("B3", Family::B, b3));

    std::vector<Term> b4 = raws(true, true, true);
    b4.push_back(dPR);
    b4.push_back(dIR);
    cat.push_back(make("B4", Family::B, b4));

    cat.push_back(make("B5", Family::B, {dLC, dIL, dSH}));
    cat.push_back(make("B6", Family::B, {dPR, dIR}));
    cat.push_back(make("B7", Family::B, {dLC, dIL, dSH, dPR, dIR}));
    cat.push_back(make("B8", Family::B, {dIL, dSH, dPR, dIR}));
    cat.push_back(make("B9", Family::B, {dLC, dSH, dPR, dIR}));
  }

  // --- family V: no OC, no geometry. Substitution slots mirror the D
  // numbering where possible (V2 = LC, V3 = IL; SH takes the vacant V1);
  // V4..V11 are the drop variants around the all-substituted V5.
  {
    auto raws = [&](bool withLC, bool withIL, bool withSH) {
      std::vector<Term> t;
      if (withLC) append(t, rawPair(LC));
      if (withIL) append(t, rawPair(IL));
      if (withSH) append(t, rawPair(SH));
      return t;
    };
    cat.push_back(make("V0", Family::V, raws(true, true, true)));

    std::vector<Term> v1 = raws(true, true, false);
    v1.push_back(dSH);
    cat.push_back(make("V1", Family::V, v1));

    std::vector<Term> v2{dLC};
    append(v2, raws(false, true, true));
    cat.push_back(make("V2", Family::V, v2));

    std::vector<Term> v3 = raws(true, false, false);
    v3.push_back(dIL);
    append(v3, rawPair(SH));
    cat.push_back(make("V3", Family::V, v3));

    cat.push_back(make("V4", Family::V, {}));  // time only
    cat.push_back(make("V5", Family::V, {dLC, dIL, dSH}));
    cat.push_back(make("V6", Family::V, {dLC, dSH}));
    cat.push_back(make("V7", Family::V, {dLC, dIL}));
    cat.push_back(make("V8", Family::V, {dLC}));
    cat.push_back(make("V9", Family::V, {dIL, dSH}));
    cat.push_back(make("V10", Family::V, {dIL}));
    cat.push_back(make("V11", Family::V, {dSH}));
  }

  cat.push_back(make("D_final", Family::D, {dSH, dPR, dIR}));
  cat.push_back(make("B_final", Family::B, {dLC, dSH, dPR, dIR}));
  cat.push_back(make("V_final", Family::V, {dLC}));
  return cat;
}

}  // namespace

const std::vector<ModelSpec>& catalog() {
  static const std::vector<ModelSpec> cat = buildCatalog();
  return cat;
}

const ModelSpec& catalogModel(const std::string& name) {
  for (const ModelSpec& spec : catalog())
    if (spec.name == name) return spec;
  std::string names;
  for (const ModelSpec& spec : catalog()) names += (names.empty() ? "" : ", ") + spec.name;
  fail(Errc::UnknownModel, "no model named '" + name + "'; catalog: " + names);
}

}  // namespace iris_aging
