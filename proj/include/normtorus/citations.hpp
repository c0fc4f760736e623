#ifndef NORMTORUS_CITATIONS_HPP
#define NORMTORUS_CITATIONS_HPP

#include <string_view>

namespace normtorus {

// Every verdict and annotated value in a report names its source through this table.
enum class Cite {
  ChsSequence,
  AbelA,
  AbelD,
  Br1,
  LemmaSha,
  ShaT,
  EqualX,
  EqualXCond1,
  EqualXCond2,
  EqualXCond3,
  EqualXCond4,
  EqualXCond5,
  PropQ1,
  BrauerSplit,
  CorQ2,
  PFinite,
  CompactOmegaRemark,
  Reciprocity,
  Rational2,
};

inline constexpr std::string_view citation(Cite c) {
  switch (c) {
    case Cite::ChsSequence: return "Theorem CHS (a)";
    case Cite::AbelA: return "Prop. abel (a)";
    case Cite::AbelD: return "Prop. abel (d)";
    case Cite::Br1: return "Theorem Br-1";
    case Cite::LemmaSha: return "Lemma Sha";
    case Cite::ShaT: return "Cor. Sha-T";
    case Cite::EqualX: return "Theorem equal-X";
    case Cite::EqualXCond1: return "Theorem equal-X (b)(1)";
    case Cite::EqualXCond2: return "Theorem equal-X (b)(2)";
    case Cite::EqualXCond3: return "Theorem equal-X (b)(3)";
    case Cite::EqualXCond4: return "Theorem equal-X (b)(4)";
    case Cite::EqualXCond5: return "Theorem equal-X (b)(5)";
    case Cite::PropQ1: return "Prop. Q_1";
    case Cite::BrauerSplit: return "Prop. brauer-split";
    case Cite::CorQ2: return "Cor. Q_2";
    case Cite::PFinite: return "Lemma p-finite";
    case Cite::CompactOmegaRemark: return "Remark after Prop. compact-omega";
    case Cite::Reciprocity: return "global reciprocity";
    case Cite::Rational2: return "Theorem rational-2";
  }
  return "";
}

}  // namespace normtorus

#endif  // NORMTORUS_CITATIONS_HPP
