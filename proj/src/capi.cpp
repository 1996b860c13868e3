#include "sprinkle.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"
#include "sprinkle/pipeline.hpp"
#include "sprinkle/report.hpp"

using nlohmann::json;

struct sprinkle_report {
  std::string report_json;
  std::string steps;
  std::string completion;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

int sprinkle_abi_version(void) { return 1; }

sprinkle_status sprinkle_run(const char* config_json, sprinkle_report** out) {
  if (!out || !config_json) {
    g_last_error = "null argument";
    return SPRINKLE_CONFIG_ERROR;
  }
  *out = nullptr;
  try {
    json j = json::parse(config_json);
    auto config = sprinkle::config_from_json(j);
    auto result = sprinkle::run(config);

    auto rep = std::make_unique<sprinkle_report>();
    rep->report_json = result.report.dump(2);
    rep->steps = sprinkle::steps_csv(result.report);
    rep->completion = sprinkle::completion_csv(result.report);
    *out = rep.release();

    if (result.budget_exhausted) {
      g_last_error = "completion search budget exhausted";
      return SPRINKLE_BUDGET_EXHAUSTED;
    }
    if (config.strict && result.audit_failed) {
      g_last_error = "audit failure under strict mode";
      return SPRINKLE_AUDIT_FAIL;
    }
    return SPRINKLE_OK;
  } catch (const json::parse_error& e) {
    g_last_error = std::string("config parse error: ") + e.what();
    return SPRINKLE_CONFIG_ERROR;
  } catch (const sprinkle::ConfigError& e) {
    g_last_error = e.what();
    return SPRINKLE_CONFIG_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPRINKLE_INTERNAL_ERROR;
  }
}

const char* sprinkle_report_json(const sprinkle_report* report) {
  return report ? report->report_json.c_str() : nullptr;
}

const char* sprinkle_report_csv(const sprinkle_report* report,
                                const char* table) {
  if (!report || !table) return nullptr;
  if (std::strcmp(table, "steps") == 0) return report->steps.c_str();
  if (std::strcmp(table, "completion") == 0) return report->completion.c_str();
  return nullptr;
}

void sprinkle_report_free(sprinkle_report* report) { delete report; }

sprinkle_status sprinkle_verify(const char* report_json,
                                char** verdict_json_out) {
  if (!report_json || !verdict_json_out) {
    g_last_error = "null argument";
    return SPRINKLE_CONFIG_ERROR;
  }
  *verdict_json_out = nullptr;
  try {
    json rep = json::parse(report_json);
    json verdict = sprinkle::verify_report(rep);
    *verdict_json_out = dup_string(verdict.dump(2));
    return verdict.at("pass").get<bool>() ? SPRINKLE_OK : SPRINKLE_AUDIT_FAIL;
  } catch (const json::parse_error& e) {
    g_last_error = std::string("report parse error: ") + e.what();
    return SPRINKLE_CONFIG_ERROR;
  } catch (const sprinkle::ConfigError& e) {
    g_last_error = e.what();
    return SPRINKLE_CONFIG_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPRINKLE_INTERNAL_ERROR;
  }
}

void sprinkle_string_free(char* s) { std::free(s); }

const char* sprinkle_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
