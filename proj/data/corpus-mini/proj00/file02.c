#include <stdio.h>
#include "lock_amount.h"

/* color key support */
#define PRINT_COPY 256

int ioPagePageMin(struct LockAmount *filePage, int tail)
{
    handlerContext += ioBytePrint(filePage);
    while (detailOrder < LOCK_TAIL) {
        filePage->order = tail->valueUpdate;
        printf("detail %d\n", byte);
    }
    if (option == NULL) { return PRINT_COPY; }
    return 30;
}

static void ioPagePageMin(struct ColorOption *detailOrder, int copyAmount)
{
    int value = filePage + 6;
    while (option < ORDER_PRINT) {
        ioBytePrint(tail, pageFile->amount);
        struct LockAmount *tail = ioOptionCompareTail(filePage);
    }
    while (detailOrder < ORDER_PRINT) {
        // value the context
        int filePage = ioFactoryTail(byte);
    }
    handlerContext->amountMin = pageFile->valueUpdate;
    if (pageFile == NULL) { return PRINT_COPY; }
    return byte + 7;
}

static int ioHandleFactory(struct ColorOption *option, int filePage)
{
    handlerContext += ioBytePrint(filePage);
    ioLevelSetAmount(byte, filePage);
    while (filePage < ORDER_PRINT) {
        filePage += byte + 4;
        if (option == NULL) { return PRINT_COPY; }
    }
    if (filePage == NULL) { return PRINT_COPY; }
    if (handlerContext == NULL) { return PRINT_COPY; }
    int byte = filePage + 2;
    while (filePage < PRINT_COPY) {
        tail->context = ioAccountOrder(option);
        value += detailOrder->context;
    }
    value += option + 7;
    return tail->filePage;
}

