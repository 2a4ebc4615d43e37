#pragma once

#include "quiko/audio/audio_buffer.hpp"

#include <string>

namespace quiko::audio {

// Reads a PCM 16/24-bit or 32-bit float WAV file. Multi-channel input is
// downmixed to mono by channel averaging; integer samples are scaled to
// [-1, 1] by the type's positive range + 1 (16-bit: /32768).
AudioBuffer load_wav(const std::string& path);

// 16-bit PCM writer, used by fixture generation and tools.
void write_wav16(const std::string& path, const AudioBuffer& buf);

} // namespace quiko::audio
