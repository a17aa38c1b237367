#pragma once

// Published numerical and theoretical smallest eigenvalues for exp(-x^beta).
struct PublishedCell {
  const char* beta;
  long n;
  const char* numerical;
  const char* theoretical;
};

inline constexpr PublishedCell kPublished[] = {
    {"1", 50, "2.0948e-10", "2.3695e-10"},       {"1", 100, "2.1079e-15", "2.3006e-15"},
    {"1", 150, "2.9551e-19", "3.1743e-19"},      {"1", 200, "1.6387e-22", "1.7437e-22"},
    {"1", 300, "5.5215e-28", "5.8090e-28"},      {"3/2", 50, "6.4066e-22", "6.8438e-22"},
    {"3/2", 100, "6.2353e-36", "6.5384e-36"},    {"3/2", 150, "9.9476e-48", "1.0343e-47"},
    {"3/2", 200, "2.8132e-58", "2.9101e-58"},    {"3/2", 300, "4.6009e-77", "4.7300e-77"},
    {"7/4", 50, "6.4483e-27", "6.6844e-27"},     {"7/4", 100, "1.6976e-45", "1.7424e-45"},
    {"7/4", 150, "1.5193e-61", "1.5525e-61"},    {"7/4", 200, "3.9265e-76", "4.0009e-76"},
    {"7/4", 300, "1.4844e-102", "1.5074e-102"},  {"2", 50, "2.7356e-31", "2.5449e-31"},
    {"2", 100, "3.8907e-54", "3.6415e-54"},      {"2", 150, "2.9557e-74", "2.7769e-74"},
    {"2", 200, "8.9775e-93", "8.4574e-93"},      {"2", 300, "9.5593e-127", "9.0396e-127"},
    {"5/2", 50, "2.2384e-38", "2.4010e-38"},     {"5/2", 100, "1.2580e-68", "1.3288e-68"},
    {"5/2", 150, "5.3195e-96", "5.5789e-96"},    {"5/2", 200, "1.2155e-121", "1.2691e-121"},
    {"5/2", 300, "1.5236e-169", "1.5819e-169"},
};
