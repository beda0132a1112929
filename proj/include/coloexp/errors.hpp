#pragma once

#include <stdexcept>
#include <string>

namespace coloexp
{

/// A file could not be opened, read or written.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input content is malformed or inconsistent. The message names the file
/// and line when one applies.
class DataError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

}  // namespace coloexp
