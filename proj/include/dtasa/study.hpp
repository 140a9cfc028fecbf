#ifndef DTASA_STUDY_HPP
#define DTASA_STUDY_HPP

#include <string>
#include <vector>

#include "dtasa/errors.hpp"
#include "dtasa/stats.hpp"

namespace dtasa {

// One 2x2 table of a primary diagnostic study. Cells are stored as doubles
// so the 0.5 continuity correction stays exact (integers and half-integers
// are representable); the CSV reader only accepts integer input.
struct DiagnosticStudy {
    std::string id;
    double tp = 0; // diseased, test positive
    double fn_ = 0; // diseased, test negative
    double tn = 0; // non-diseased, test negative
    double fp = 0; // non-diseased, test positive

    double diseased() const { return tp + fn_; }
    double non_diseased() const { return tn + fp; }
};

// Logit-scale summary with within-study variances.
struct StudySummary {
    double y1 = 0;    // logit observed sensitivity
    double y2 = 0;    // logit observed specificity
    double s1_sq = 0; // within-study variance of y1
    double s2_sq = 0; // within-study variance of y2

    double ln_dor() const { return y1 + y2; }
};

// Adds 0.5 to all four cells when any cell is zero; otherwise a no-op.
inline DiagnosticStudy continuity_correct(const DiagnosticStudy& s) {
    if (s.tp == 0 || s.fn_ == 0 || s.tn == 0 || s.fp == 0) {
        DiagnosticStudy c = s;
        c.tp += 0.5;
        c.fn_ += 0.5;
        c.tn += 0.5;
        c.fp += 0.5;
        return c;
    }
    return s;
}

inline StudySummary summarize(const DiagnosticStudy& s) {
    if (s.tp <= 0 || s.fn_ <= 0 || s.tn <= 0 || s.fp <= 0) {
        throw DegenerateStudy("study '" + s.id +
                              "' has a zero cell; apply continuity correction first");
    }
    StudySummary out;
    out.y1 = logit(s.tp / (s.tp + s.fn_));
    out.y2 = logit(s.tn / (s.tn + s.fp));
    out.s1_sq = 1.0 / s.tp + 1.0 / s.fn_;
    out.s2_sq = 1.0 / s.tn + 1.0 / s.fp;
    return out;
}

inline std::vector<StudySummary> summarize_all(const std::vector<DiagnosticStudy>& studies) {
    std::vector<StudySummary> out;
    out.reserve(studies.size());
    for (const auto& s : studies) {
        out.push_back(summarize(continuity_correct(s)));
    }
    return out;
}

} // namespace dtasa

#endif
