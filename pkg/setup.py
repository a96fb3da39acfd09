#!/usr/bin/env python
# -*- coding: utf-8 -*-


import os
import re

try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup


requirements = [
    'bacpypes',
    'numpy>=1.17',
    'scipy',
    'PyWavelets',
]

test_requirements = [
]

# read in the __init__.py file, extract the metadata
init_py = open(os.path.join('gegenpypes', '__init__.py')).read()
metadata = dict(re.findall("__([a-z]+)__ = '([^']+)'", init_py))

setup(
    name='gegenpypes',
    version=metadata['version'],
    description="Wavelet packet best bases for Gegenbauer long memory processes",
    long_description=open('README.rst').read(),
    author=metadata['author'],
    author_email=metadata['email'],
    url='https://github.com/JoelBender/gegenpypes',
    packages=[
        'gegenpypes',
    ],
    package_dir={
        'gegenpypes': 'gegenpypes',
        },
    include_package_data=True,
    install_requires=requirements,
    entry_points={
        'console_scripts': [
            'gegenpypes = gegenpypes.cli:main',
            ],
        },
    license="MIT",
    zip_safe=False,
    keywords='gegenpypes wavelet packet gegenbauer long memory',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Utilities',
    ],
    test_suite='tests',
    tests_require=test_requirements
)
