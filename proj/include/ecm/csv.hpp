#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

namespace ecm::csv {

/// Bumped whenever a header below changes.
inline constexpr int kSchemaVersion = 1;

inline constexpr std::string_view kSpectrumHeader = "k,N_k,delta_k,c_k,c_k_over_f,range_id,n,tau,replica";
inline constexpr std::string_view kBinnedHeader = "k_lo,k_hi,mean_k,mean_c,c_std_err,vertices,replica";
inline constexpr std::string_view kRegimesHeader = "k,epsilon,delta_k_total,delta_k_window,fraction,replica";
inline constexpr std::string_view kCrossoverHeader =
    "B,ck_over_n2mt_theory,ck_over_n2mt_rangeII,ck_over_n2mt_rangeIII";
inline constexpr std::string_view kConnectionHeader = "du_lo,du_hi,dv_lo,dv_hi,pairs,empirical_p,model_p,std_err";
inline constexpr std::string_view kTheoryHeader = "k,c_theory,f_scale,range_id,method";
inline constexpr std::string_view kCompareHeader =
    "k_lo,k_hi,mean_k,ecm_c,hvm_c,ratio,std_err,ecm_vertices,hvm_vertices";

/// Shortest round-trip decimal ("nan" for NaN, "inf"/"-inf" for infinities).
std::string format_double(double x);
std::string format_optional(const std::optional<double>& x);

struct OutputRecord {
  std::string file;
  std::uint64_t rows = 0;
  std::string sha256;
};

/// Buffers one CSV table in memory; `write` flushes it to disk and returns
/// the manifest entry.
class Table {
 public:
  explicit Table(std::string_view header) { out_ << header << '\n'; }

  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << '\n';
    ++rows_;
  }

  std::uint64_t rows() const { return rows_; }
  std::string str() const { return out_.str(); }
  OutputRecord write(const std::filesystem::path& dir, const std::string& file) const;

 private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(const std::optional<double>& x) { return format_optional(x); }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <class I>
    requires std::is_integral_v<I>
  static std::string cell(I i) {
    return std::to_string(i);
  }

  std::ostringstream out_;
  std::uint64_t rows_ = 0;
};

std::string sha256_hex(std::string_view bytes);

}  // namespace ecm::csv
