# curvelet / shearlet / Meyer wavelet frame analysis

import importlib.metadata

# used when running from a source checkout that was never installed
__version__ = "1.0.0"

# version numbers are expected in the form int.int.int (major.minor.patch)
#
# valid = 1, 1.0, 1.0.1, 2024.07.16
# invalid = 1.0.1a
def package_version():
    package_name = __name__.split(".")[0]
    try:
        version = importlib.metadata.version(package_name)
    except importlib.metadata.PackageNotFoundError:
        version = __version__
    parts = version.split(".")
    major = parts[0]
    minor = parts[1] if len(parts) > 1 else None
    patch = parts[2] if len(parts) > 2 else None
    return version, major, minor, patch

# check if the package version equals the requested version ("1.0" or 1, 0)
def version_matches(major, minor=None, patch=None):
    if isinstance(major, str) and "." in major:
        vs = major.split(".")
        major = vs[0]
        minor = vs[1] if len(vs) > 1 else None
        patch = vs[2] if len(vs) > 2 else None
    full_version, package_major, package_minor, package_patch = package_version()
    try:
        if int(major) != int(package_major):
            return False
        if minor is not None and int(minor) != int(package_minor):
            return False
        if patch is not None and int(patch) != int(package_patch):
            return False
        return True
    except (TypeError, ValueError):
        print("version compare error, no match with:", full_version, "vs:", major, minor, patch)
        return False
