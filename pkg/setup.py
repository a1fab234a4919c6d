from setuptools import setup, find_packages

setup(
    # Packages live in tools/lib
    package_dir={"": "tools/lib"},
    packages=find_packages(where="tools/lib", exclude=["*.tests", "*.tests.*"]),
)
