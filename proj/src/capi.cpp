#include "abl/abl.h"

#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include "abl/harness.hpp"
#include "abl/hilbert.hpp"
#include "abl/satio.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

}  // namespace

struct abl_result {
  std::string json;
  std::string csv;
  bool bound_violation = false;
};

extern "C" {

abl_status abl_run_json(const char* config_json, abl_result** out_result) {
  if (config_json == nullptr || out_result == nullptr) {
    set_error("null argument");
    return ABL_ERR_CONFIG;
  }
  *out_result = nullptr;
  try {
    const abl::Json config = abl::Json::parse(config_json);
    abl::HarnessResult result = abl::run_experiment(config);
    auto* handle = new abl_result;
    handle->json = result.record.dump(2);
    handle->csv = std::move(result.csv);
    handle->bound_violation = result.bound_violation;
    *out_result = handle;
    g_last_error.clear();
    return ABL_OK;
  } catch (const abl::DimacsParseError& e) {
    set_error(e.what());
    return ABL_ERR_PARSE;
  } catch (const abl::Json::exception& e) {
    set_error(e.what());
    return ABL_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return ABL_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ABL_ERR_RUNTIME;
  }
}

const char* abl_result_json(const abl_result* result) {
  return result ? result->json.c_str() : nullptr;
}

const char* abl_result_csv(const abl_result* result) {
  if (result == nullptr || result->csv.empty()) return nullptr;
  return result->csv.c_str();
}

int abl_result_bound_violation(const abl_result* result) {
  return (result != nullptr && result->bound_violation) ? 1 : 0;
}

void abl_result_free(abl_result* result) { delete result; }

const char* abl_last_error(void) { return g_last_error.c_str(); }

const char* abl_version(void) { return "0.1.0"; }

abl_status abl_fwht(int n_qubits, double* interleaved_reim) {
  if (interleaved_reim == nullptr) {
    set_error("null buffer");
    return ABL_ERR_CONFIG;
  }
  try {
    abl::StateVector state;
    state.n = n_qubits;
    if (n_qubits < 1 || n_qubits > abl::kMaxQubits) {
      throw std::invalid_argument("qubit count out of range");
    }
    const std::uint64_t dim = state.dim();
    state.amps.resize(dim);
    std::memcpy(state.amps.data(), interleaved_reim, dim * sizeof(abl::cdouble));
    abl::fwht_inplace(state);
    std::memcpy(interleaved_reim, state.amps.data(), dim * sizeof(abl::cdouble));
    g_last_error.clear();
    return ABL_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ABL_ERR_CONFIG;
  }
}

}  // extern "C"
