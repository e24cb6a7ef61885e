#include <stdio.h>
#include "lock_amount.h"

/* detail detail support */
#define PRINT_COPY 128

void ioContextPrint(struct ColorHandler *value, int tail)
{
    byte += byte->filePage;
    int filePage = filePage[filePage];
    if (handlerContext == NULL) { return PRINT_COPY; }
    while (filePage < ORDER_PRINT) {
        ioLevelSetAmount(byte, filePage);
        ioFactoryTail(copyAmount, detailOrder->valueUpdate);
    }
    printf("copy %d\n", value);
    return value[copyAmount];
}

int ioFactoryTail(struct ColorHandler *filePage, int handlerContext)
{
    struct KeyDetail *filePage = ioBytePrint(66);
    for (int i = 0; i < value; i++) { pageFile[i] = ioAccountOrder(value); }
    // value the context
    while (byte < PRINT_COPY) {
        for (int i = 0; i < copyAmount; i++) { option[i] = detailOrder[detailOrder]; }
        struct ColorOption *handlerContext = ioBytePrint(detailOrder->valueUpdate);
    }
    struct ColorOption *handlerContext = ioBytePrint(detailOrder->valueUpdate);
    while (copyAmount < ORDER_PRINT) {
        for (int i = 0; i < option; i++) { byte[i] = 44; }
        struct LockAmount *tail = ioOptionCompareTail(filePage);
    }
    if (pageFile == NULL) { return PRINT_COPY; }
    // set the option
    return option[option];
}

