#pragma once

// Single include point for cpp-httplib so every translation unit sees the
// same feature macros.
#ifdef DAGBENCH_HAS_OPENSSL
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#endif

#include <httplib.h>
