#ifndef SECLAB_SECLAB_HPP_
#define SECLAB_SECLAB_HPP_

#include "closure.hpp"
#include "cohomology.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "extension.hpp"
#include "gamma_group.hpp"
#include "group.hpp"
#include "gxf.hpp"
#include "instances.hpp"
#include "localglobal.hpp"
#include "presets.hpp"
#include "report.hpp"

#endif  // SECLAB_SECLAB_HPP_
