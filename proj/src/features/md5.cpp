// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/features/md5.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace proofpilot::features {

namespace {

// Fetching the algorithm on every call goes through a locked provider
// lookup, so the digest and a per-thread context are created once.
const EVP_MD *md5_algorithm() {
  static const std::unique_ptr<EVP_MD, decltype(&EVP_MD_free)> md(EVP_MD_fetch(nullptr, "MD5", nullptr),
                                                                  &EVP_MD_free);
  if (!md) throw std::runtime_error("MD5 is not available from the crypto provider");
  return md.get();
}

EVP_MD_CTX *thread_context() {
  thread_local const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                                &EVP_MD_CTX_free);
  if (!ctx) throw std::runtime_error("cannot allocate a digest context");
  return ctx.get();
}

}  // namespace

std::array<std::uint8_t, 16> md5(std::string_view bytes) {
  std::array<std::uint8_t, 16> digest{};
  unsigned int len = 0;
  EVP_MD_CTX *ctx = thread_context();
  if (EVP_DigestInit_ex2(ctx, md5_algorithm(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest.data(), &len) != 1 || len != digest.size()) {
    throw std::runtime_error("MD5 digest failed");
  }
  return digest;
}

std::uint64_t md5_prefix64(std::string_view bytes) {
  const auto digest = md5(bytes);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | digest[i];
  return v;
}

}  // namespace proofpilot::features
