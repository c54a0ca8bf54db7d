#include "fab.h"
#include <cassert>
int main() { return 0; }
