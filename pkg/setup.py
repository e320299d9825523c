#!/usr/bin/env python3

from setuptools import setup, find_packages


# Get the long description from the README file
with open('README.md', encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='gps-enhancer',

    # Versions should comply with PEP440.  For a discussion on single-sourcing
    # the version across setup.py and the project code, see
    # https://packaging.python.org/en/latest/single_source_version.html
    version='0.0.1',

    description='GPS trace filtering (Kalman, average) and error analysis.',
    long_description=long_description,
    long_description_content_type='text/markdown',

    # Author details
    author='Nobatek/INEF4',

    # Choose your license
    license='MIT',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        # How mature is this project? Common values are
        #   3 - Alpha
        #   4 - Beta
        #   5 - Production/Stable
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'Environment :: Console',
        'Natural Language :: English',
        'Operating System :: Unix',
        'Topic :: Scientific/Engineering :: GIS',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],

    # What does your project relate to?
    keywords='gps nmea kalman filter geojson haversine',

    packages=find_packages(exclude=['tests*']),

    # Bundled traces (CSV + JSON sidecar)
    package_data={
        'gps_enhancer.datasets': ['data/*.csv', 'data/*.json'],
    },

    python_requires='>=3.8',

    # List run-time dependencies here. These will be installed by pip when
    # your project is installed. For an analysis of "install_requires" vs pip's
    # requirements files see:
    # https://packaging.python.org/en/latest/requirements.html
    # https://caremad.io/2013/07/setup-vs-requirement/
    install_requires=[
        'numpy>=1.17',
    ],

    # List additional groups of dependencies here (e.g. development
    # dependencies). You can install these using the following syntax,
    # for example:
    # $ pip install -e .[dev,test]
    extras_require={
        'test': [
            'flake8>=3.2.0',
            'coverage',
            'pytest>=2.8',
            'pytest-cov>=2.4.0',
            'tox>=2.0',
        ],
    },

    entry_points={
        'console_scripts': [
            'gps-enhancer=gps_enhancer.cli:main',
        ],
    },
)
