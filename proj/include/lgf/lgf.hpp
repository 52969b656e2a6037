#ifndef LGF_LGF_HPP
#define LGF_LGF_HPP

#include "lgf/certificate.hpp"
#include "lgf/forge.hpp"
#include "lgf/search.hpp"
#include "lgf/verify.hpp"

#endif // LGF_LGF_HPP
